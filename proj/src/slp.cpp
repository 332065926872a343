#include "slpgrep/slp.hpp"

#include <algorithm>
#include <sstream>

#include "slpgrep/error.hpp"
#include "slpgrep/varint.hpp"

namespace slpgrep {

std::vector<Violation> validate_slp(const Slp& slp) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < slp.rules.size(); ++i) {
    const Rule& r = slp.rules[i];
    const std::size_t number = i + 1;
    if (r.left != variable_for_rule(i)) {
      out.push_back({number, "rule " + std::to_string(number) + " defines symbol " +
                                 std::to_string(r.left) + ", expected " +
                                 std::to_string(variable_for_rule(i))});
    }
    for (SymbolId rhs : {r.first, r.second}) {
      if (rhs >= variable_for_rule(i)) {
        out.push_back({number, "rule " + std::to_string(number) +
                                   " references undefined/later symbol " +
                                   std::to_string(rhs)});
      }
    }
  }
  if (slp.axiom.empty()) {
    out.push_back({std::nullopt, "empty axiom"});
  }
  for (std::size_t i = 0; i < slp.axiom.size(); ++i) {
    if (!slp.defines(slp.axiom[i])) {
      out.push_back({std::nullopt, "axiom position " + std::to_string(i + 1) +
                                       " references undefined symbol " +
                                       std::to_string(slp.axiom[i])});
    }
  }
  return out;
}

void require_valid(const Slp& slp) {
  auto violations = validate_slp(slp);
  if (!violations.empty()) throw InvalidSlpError("invalid slp: " + violations.front().reason);
}

void append_expansion(const Slp& slp, SymbolId sym, std::string& out) {
  std::vector<SymbolId> stack{sym};
  while (!stack.empty()) {
    const SymbolId top = stack.back();
    stack.pop_back();
    if (is_terminal(top)) {
      out.push_back(static_cast<char>(top));
      continue;
    }
    const Rule& r = slp.rule_for(top);
    stack.push_back(r.second);
    stack.push_back(r.first);
  }
}

std::string expand_symbol(const Slp& slp, SymbolId sym) {
  if (!slp.defines(sym)) throw InvalidSlpError("undefined symbol " + std::to_string(sym));
  std::string out;
  append_expansion(slp, sym, out);
  return out;
}

std::string expand(const Slp& slp) {
  require_valid(slp);
  std::string out;
  for (SymbolId sym : slp.axiom) append_expansion(slp, sym, out);
  return out;
}

std::vector<std::uint8_t> encode_slp(const Slp& slp) {
  require_valid(slp);
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kFormatVersion);
  varint::append(out, slp.rules.size());
  for (const Rule& r : slp.rules) {
    varint::append(out, r.first);
    varint::append(out, r.second);
  }
  varint::append(out, slp.axiom.size());
  for (SymbolId sym : slp.axiom) varint::append(out, sym);
  return out;
}

SlpReader::SlpReader(std::istream& in) : in_(in) {
  char magic[4];
  in_.read(magic, 4);
  if (in_.gcount() != 4) throw FormatError(FormatError::Kind::kTruncated, "missing header");
  if (!std::equal(std::begin(magic), std::end(magic), std::begin(kMagic))) {
    throw FormatError(FormatError::Kind::kBadMagic, "");
  }
  const int version = in_.get();
  if (version == std::char_traits<char>::eof()) {
    throw FormatError(FormatError::Kind::kTruncated, "missing version");
  }
  if (version != kFormatVersion) {
    throw FormatError(FormatError::Kind::kUnsupportedVersion, std::to_string(version));
  }
  rule_count_ = read_number("rule count");
  if (rule_count_ > std::uint64_t{0xFFFFFFFF} - kFirstVariable) {
    throw FormatError(FormatError::Kind::kInvariantViolation, "rule count too large");
  }
}

std::uint64_t SlpReader::read_number(const char* what) {
  std::uint64_t value = 0;
  switch (varint::read(in_, value)) {
    case varint::ReadStatus::kOk:
      return value;
    case varint::ReadStatus::kEof:
    case varint::ReadStatus::kTruncated:
      throw FormatError(FormatError::Kind::kTruncated, std::string("while reading ") + what);
    case varint::ReadStatus::kOverflow:
      break;
  }
  throw FormatError(FormatError::Kind::kBadVarint, what);
}

std::optional<Rule> SlpReader::next_rule() {
  if (rules_read_ == rule_count_) return std::nullopt;
  const SymbolId left = variable_for_rule(rules_read_);
  const std::uint64_t first = read_number("rule");
  const std::uint64_t second = read_number("rule");
  ++rules_read_;
  for (std::uint64_t rhs : {first, second}) {
    if (rhs >= left) {
      throw FormatError(FormatError::Kind::kInvariantViolation,
                        "rule " + std::to_string(rules_read_) +
                            " references undefined/later symbol " + std::to_string(rhs));
    }
  }
  return Rule{left, static_cast<SymbolId>(first), static_cast<SymbolId>(second)};
}

std::vector<SymbolId> SlpReader::read_axiom() {
  if (rules_read_ != rule_count_ || axiom_read_) {
    throw FormatError(FormatError::Kind::kInvariantViolation, "axiom read out of order");
  }
  axiom_read_ = true;
  const std::uint64_t length = read_number("axiom length");
  if (length == 0) throw FormatError(FormatError::Kind::kInvariantViolation, "empty axiom");
  const std::uint64_t limit = kFirstVariable + rule_count_;
  std::vector<SymbolId> axiom;
  axiom.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(length, 1u << 20)));
  for (std::uint64_t i = 0; i < length; ++i) {
    const std::uint64_t sym = read_number("axiom");
    if (sym >= limit) {
      throw FormatError(FormatError::Kind::kInvariantViolation,
                        "axiom references undefined symbol " + std::to_string(sym));
    }
    axiom.push_back(static_cast<SymbolId>(sym));
  }
  if (in_.peek() != std::char_traits<char>::eof()) {
    throw FormatError(FormatError::Kind::kTrailingData, "bytes after axiom");
  }
  return axiom;
}

Slp read_slp(std::istream& in) {
  SlpReader reader(in);
  Slp slp;
  slp.rules.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(reader.rule_count(), 1u << 20)));
  while (auto rule = reader.next_rule()) slp.rules.push_back(*rule);
  slp.axiom = reader.read_axiom();
  return slp;
}

Slp decode_slp(std::span<const std::uint8_t> bytes) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()));
  return read_slp(in);
}

}  // namespace slpgrep
