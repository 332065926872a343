#include "slpgrep/oracle.hpp"

#include <bitset>
#include <cctype>
#include <memory>

#include "slpgrep/error.hpp"
#include "slpgrep/regex.hpp"

namespace slpgrep::oracle {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

bool line_matches(const Fsa& fsa, std::string_view line) {
  if (fsa.matches_empty()) return true;
  std::vector<char> current(fsa.state_count());
  std::vector<char> next(fsa.state_count());
  for (std::size_t start = 0; start < line.size(); ++start) {
    std::fill(current.begin(), current.end(), 0);
    for (State q : fsa.initials()) current[q] = 1;
    for (std::size_t i = start; i < line.size(); ++i) {
      std::fill(next.begin(), next.end(), 0);
      bool alive = false;
      for (State q = 0; q < fsa.state_count(); ++q) {
        if (!current[q]) continue;
        for (State to : fsa.successors(q, static_cast<std::uint8_t>(line[i]))) {
          next[to] = 1;
          alive = true;
        }
      }
      current.swap(next);
      for (State f : fsa.finals()) {
        if (current[f]) return true;
      }
      if (!alive) break;
    }
  }
  return false;
}

bool line_matches_wrapped(const Fsa& fsa, std::string_view line) {
  if (fsa.matches_empty()) return true;
  std::vector<char> current(fsa.state_count(), 0);
  for (char c : line) {
    for (State q : fsa.initials()) current[q] = 1;
    std::vector<char> next(fsa.state_count(), 0);
    for (State q = 0; q < fsa.state_count(); ++q) {
      if (!current[q]) continue;
      for (State to : fsa.successors(q, static_cast<std::uint8_t>(c))) next[to] = 1;
    }
    current.swap(next);
    for (State f : fsa.finals()) {
      if (current[f]) return true;
    }
  }
  return false;
}

std::vector<std::string> oracle_lines(std::string_view text, std::string_view pattern) {
  const Fsa fsa = compile(pattern);
  std::vector<std::string> out;
  for (std::string_view line : split_lines(text)) {
    if (line_matches(fsa, line)) out.emplace_back(line);
  }
  return out;
}

std::uint64_t oracle_count(std::string_view text, std::string_view pattern) {
  return oracle_lines(text, pattern).size();
}

namespace {

// Independent parse of the dialect into a small expression tree.
struct Expr {
  enum Op { kSeq, kOr, kByteSet, kLoop } op = kSeq;
  std::vector<std::unique_ptr<Expr>> parts;
  std::bitset<256> set;
  int lo = 0, hi = 0;  // kLoop bounds, hi < 0 for unbounded
};

class RefParser {
 public:
  explicit RefParser(std::string_view p) : p_(p) {}

  std::unique_ptr<Expr> run() {
    auto e = alternatives();
    if (i_ != p_.size()) bad("stray ')'");
    return e;
  }

 private:
  [[noreturn]] void bad(const char* why) const {
    throw PatternError(PatternError::Kind::kSyntax, i_, why);
  }

  std::unique_ptr<Expr> alternatives() {
    auto e = std::make_unique<Expr>();
    e->op = Expr::kOr;
    e->parts.push_back(sequence());
    while (i_ < p_.size() && p_[i_] == '|') {
      ++i_;
      e->parts.push_back(sequence());
    }
    return e;
  }

  std::unique_ptr<Expr> sequence() {
    auto e = std::make_unique<Expr>();
    e->op = Expr::kSeq;
    while (i_ < p_.size() && p_[i_] != '|' && p_[i_] != ')') e->parts.push_back(postfix());
    return e;
  }

  int number() {
    int v = 0;
    const std::size_t from = i_;
    while (i_ < p_.size() && std::isdigit(static_cast<unsigned char>(p_[i_]))) v = v * 10 + (p_[i_++] - '0');
    if (i_ == from) bad("number expected");
    return v;
  }

  std::unique_ptr<Expr> postfix() {
    auto e = primary();
    for (;;) {
      if (i_ >= p_.size()) return e;
      int lo = 0, hi = 0;
      const char c = p_[i_];
      if (c == '*' || c == '+' || c == '?') {
        lo = c == '+' ? 1 : 0;
        hi = c == '?' ? 1 : -1;
        ++i_;
      } else if (c == '{') {
        ++i_;
        lo = hi = number();
        if (i_ < p_.size() && p_[i_] == ',') {
          ++i_;
          hi = (i_ < p_.size() && p_[i_] == '}') ? -1 : number();
        }
        if (i_ >= p_.size() || p_[i_] != '}') bad("'}' expected");
        ++i_;
      } else {
        return e;
      }
      auto loop = std::make_unique<Expr>();
      loop->op = Expr::kLoop;
      loop->lo = lo;
      loop->hi = hi;
      loop->parts.push_back(std::move(e));
      e = std::move(loop);
    }
  }

  unsigned char escaped() {
    if (i_ >= p_.size()) bad("dangling backslash");
    const char c = p_[i_++];
    if (c == 'n') return '\n';
    if (c == 't') return '\t';
    if (c == 'r') return '\r';
    if (c == 'f') return '\f';
    if (c == 'v') return '\v';
    if (c == 'x') {
      if (i_ + 2 > p_.size()) bad("short hex escape");
      const std::string hex(p_.substr(i_, 2));
      if (!std::isxdigit(static_cast<unsigned char>(hex[0])) ||
          !std::isxdigit(static_cast<unsigned char>(hex[1]))) {
        bad("bad hex escape");
      }
      i_ += 2;
      return static_cast<unsigned char>(std::stoi(hex, nullptr, 16));
    }
    if (std::isalnum(static_cast<unsigned char>(c))) bad("unknown escape");
    return static_cast<unsigned char>(c);
  }

  unsigned char one_char() {
    const char c = p_[i_++];
    return c == '\\' ? escaped() : static_cast<unsigned char>(c);
  }

  std::unique_ptr<Expr> primary() {
    auto e = std::make_unique<Expr>();
    e->op = Expr::kByteSet;
    const char c = p_[i_];
    if (c == '(') {
      ++i_;
      auto inner = alternatives();
      if (i_ >= p_.size() || p_[i_] != ')') bad("')' expected");
      ++i_;
      return inner;
    }
    if (c == '*' || c == '+' || c == '?' || c == '{') bad("quantifier without operand");
    if (c == '.') {
      ++i_;
      e->set.set();
      e->set.reset('\n');
      return e;
    }
    if (c != '[') {
      e->set.set(one_char());
      return e;
    }
    ++i_;
    bool negate = false;
    if (i_ < p_.size() && p_[i_] == '^') {
      negate = true;
      ++i_;
    }
    for (bool first = true;; first = false) {
      if (i_ >= p_.size()) bad("']' expected");
      if (p_[i_] == ']' && !first) break;
      const unsigned char from = one_char();
      unsigned char to = from;
      if (i_ + 1 < p_.size() && p_[i_] == '-' && p_[i_ + 1] != ']') {
        ++i_;
        to = one_char();
        if (to < from) bad("reversed range");
      }
      for (unsigned v = from; v <= to; ++v) e->set.set(v);
    }
    ++i_;
    if (negate) {
      e->set.flip();
      e->set.reset('\n');
    }
    return e;
  }

  std::string_view p_;
  std::size_t i_ = 0;
};

using Positions = std::vector<bool>;

Positions advance(const Expr& e, const Positions& from, std::string_view text) {
  const std::size_t n = text.size();
  switch (e.op) {
    case Expr::kByteSet: {
      Positions out(n + 1, false);
      for (std::size_t p = 0; p < n; ++p) {
        if (from[p] && e.set.test(static_cast<unsigned char>(text[p]))) out[p + 1] = true;
      }
      return out;
    }
    case Expr::kSeq: {
      Positions cur = from;
      for (const auto& part : e.parts) cur = advance(*part, cur, text);
      return cur;
    }
    case Expr::kOr: {
      Positions out(n + 1, false);
      for (const auto& part : e.parts) {
        const Positions r = advance(*part, from, text);
        for (std::size_t p = 0; p <= n; ++p) out[p] = out[p] || r[p];
      }
      return out;
    }
    case Expr::kLoop: {
      Positions cur = from;
      for (int k = 0; k < e.lo; ++k) cur = advance(*e.parts[0], cur, text);
      Positions all = cur;
      for (int k = e.lo; e.hi < 0 || k < e.hi; ++k) {
        cur = advance(*e.parts[0], cur, text);
        bool grew = false;
        for (std::size_t p = 0; p <= n; ++p) {
          if (cur[p] && !all[p]) {
            all[p] = true;
            grew = true;
          }
        }
        if (!grew && e.hi < 0) break;
      }
      return all;
    }
  }
  return from;
}

}  // namespace

bool reference_match(std::string_view pattern, std::string_view text) {
  const auto expr = RefParser(pattern).run();
  Positions start(text.size() + 1, false);
  start[0] = true;
  return advance(*expr, start, text)[text.size()];
}

}  // namespace slpgrep::oracle
