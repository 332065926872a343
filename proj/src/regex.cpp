#include "slpgrep/regex.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <tuple>

#include "slpgrep/error.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep {
namespace {

constexpr int kMaxRepeat = 1000;
constexpr std::size_t kMaxThompsonStates = 1'000'000;
constexpr std::size_t kMaxMergeStates = 4096;

using ByteSet = std::bitset<256>;

struct Node {
  enum class Kind { kEmpty, kBytes, kConcat, kAlternation, kRepeat };

  Kind kind = Kind::kEmpty;
  ByteSet bytes;
  std::vector<std::unique_ptr<Node>> children;
  int min = 0;
  int max = 0;  // -1: unbounded
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind kind) {
  auto node = std::make_unique<Node>();
  node->kind = kind;
  return node;
}

ByteSet any_but_newline() {
  ByteSet set;
  set.set();
  set.reset(kNewline);
  return set;
}

class Parser {
 public:
  explicit Parser(std::string_view pattern) : pattern_(pattern) {}

  NodePtr parse() {
    NodePtr root = parse_alternation();
    if (pos_ < pattern_.size()) fail("unmatched ')'");
    return root;
  }

  bool mentions_newline() const { return mentions_newline_; }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw PatternError(PatternError::Kind::kSyntax, pos_, reason);
  }

  bool at_end() const { return pos_ >= pattern_.size(); }
  char peek() const { return pattern_[pos_]; }

  NodePtr parse_alternation() {
    NodePtr first = parse_concat();
    if (at_end() || peek() != '|') return first;
    auto alt = make_node(Node::Kind::kAlternation);
    alt->children.push_back(std::move(first));
    while (!at_end() && peek() == '|') {
      ++pos_;
      alt->children.push_back(parse_concat());
    }
    return alt;
  }

  NodePtr parse_concat() {
    auto concat = make_node(Node::Kind::kConcat);
    while (!at_end() && peek() != '|' && peek() != ')') {
      concat->children.push_back(parse_repeat());
    }
    if (concat->children.empty()) return make_node(Node::Kind::kEmpty);
    if (concat->children.size() == 1) return std::move(concat->children.front());
    return concat;
  }

  NodePtr parse_repeat() {
    NodePtr atom = parse_atom();
    while (!at_end()) {
      const char c = peek();
      int min = 0;
      int max = 0;
      if (c == '*') {
        min = 0, max = -1;
        ++pos_;
      } else if (c == '+') {
        min = 1, max = -1;
        ++pos_;
      } else if (c == '?') {
        min = 0, max = 1;
        ++pos_;
      } else if (c == '{') {
        std::tie(min, max) = parse_bounds();
      } else {
        break;
      }
      auto rep = make_node(Node::Kind::kRepeat);
      rep->min = min;
      rep->max = max;
      rep->children.push_back(std::move(atom));
      atom = std::move(rep);
    }
    return atom;
  }

  int parse_int() {
    const std::size_t start = pos_;
    long value = 0;
    while (!at_end() && peek() >= '0' && peek() <= '9') {
      value = value * 10 + (peek() - '0');
      if (value > kMaxRepeat) fail("repetition count exceeds " + std::to_string(kMaxRepeat));
      ++pos_;
    }
    if (pos_ == start) fail("expected a number in repetition");
    return static_cast<int>(value);
  }

  std::pair<int, int> parse_bounds() {
    ++pos_;  // '{'
    const int min = parse_int();
    int max = min;
    if (!at_end() && peek() == ',') {
      ++pos_;
      max = (!at_end() && peek() == '}') ? -1 : parse_int();
    }
    if (at_end() || peek() != '}') fail("unterminated repetition");
    ++pos_;
    if (max != -1 && max < min) fail("repetition bounds out of order");
    return {min, max};
  }

  NodePtr parse_atom() {
    const char c = peek();
    switch (c) {
      case '(': {
        ++pos_;
        NodePtr inner = parse_alternation();
        if (at_end() || peek() != ')') fail("missing ')'");
        ++pos_;
        return inner;
      }
      case '*':
      case '+':
      case '?':
      case '{':
        fail("nothing to repeat");
      case '.': {
        ++pos_;
        auto node = make_node(Node::Kind::kBytes);
        node->bytes = any_but_newline();
        return node;
      }
      case '[':
        return parse_class();
      default: {
        auto node = make_node(Node::Kind::kBytes);
        node->bytes.set(parse_literal_byte());
        return node;
      }
    }
  }

  // One literal byte at pos_, handling escapes. Records spelled newlines.
  std::uint8_t parse_literal_byte() {
    std::uint8_t byte = 0;
    if (peek() != '\\') {
      byte = static_cast<std::uint8_t>(peek());
      ++pos_;
    } else {
      ++pos_;
      if (at_end()) fail("trailing backslash");
      const char e = peek();
      ++pos_;
      switch (e) {
        case 'n':
          byte = '\n';
          break;
        case 't':
          byte = '\t';
          break;
        case 'r':
          byte = '\r';
          break;
        case 'f':
          byte = '\f';
          break;
        case 'v':
          byte = '\v';
          break;
        case 'x': {
          int value = 0;
          for (int i = 0; i < 2; ++i) {
            if (at_end() || !std::isxdigit(static_cast<unsigned char>(peek()))) {
              fail("\\x needs two hex digits");
            }
            const char h = peek();
            value = value * 16 + (std::isdigit(static_cast<unsigned char>(h))
                                      ? h - '0'
                                      : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
            ++pos_;
          }
          byte = static_cast<std::uint8_t>(value);
          break;
        }
        default:
          if (std::isalnum(static_cast<unsigned char>(e))) {
            --pos_;
            fail(std::string("unsupported escape \\") + e);
          }
          byte = static_cast<std::uint8_t>(e);
      }
    }
    if (byte == kNewline) mentions_newline_ = true;
    return byte;
  }

  NodePtr parse_class() {
    const std::size_t open = pos_;
    ++pos_;  // '['
    bool negated = false;
    if (!at_end() && peek() == '^') {
      negated = true;
      ++pos_;
    }
    ByteSet set;
    bool first = true;
    while (true) {
      if (at_end()) {
        pos_ = open;
        fail("unterminated character class");
      }
      if (peek() == ']' && !first) break;
      first = false;
      const std::uint8_t lo = parse_literal_byte();
      std::uint8_t hi = lo;
      if (pos_ + 1 < pattern_.size() && peek() == '-' && pattern_[pos_ + 1] != ']') {
        ++pos_;
        hi = parse_literal_byte();
        if (hi < lo) fail("character range out of order");
      }
      for (int b = lo; b <= hi; ++b) set.set(static_cast<std::size_t>(b));
    }
    ++pos_;  // ']'
    if (negated) {
      set.flip();
      set.reset(kNewline);
    }
    auto node = make_node(Node::Kind::kBytes);
    node->bytes = set;
    return node;
  }

  std::string_view pattern_;
  std::size_t pos_ = 0;
  bool mentions_newline_ = false;
};

class ThompsonBuilder {
 public:
  explicit ThompsonBuilder(ThompsonNfa& nfa) : nfa_(nfa) {}

  struct Fragment {
    State start;
    State accept;
  };

  Fragment build(const Node& node) {
    switch (node.kind) {
      case Node::Kind::kEmpty: {
        const State s = add_state();
        const State t = add_state();
        nfa_.epsilon.emplace_back(s, t);
        return {s, t};
      }
      case Node::Kind::kBytes: {
        const State s = add_state();
        const State t = add_state();
        nfa_.edges.push_back({s, node.bytes, t});
        return {s, t};
      }
      case Node::Kind::kConcat: {
        Fragment whole = build(*node.children.front());
        for (std::size_t i = 1; i < node.children.size(); ++i) {
          const Fragment next = build(*node.children[i]);
          nfa_.epsilon.emplace_back(whole.accept, next.start);
          whole.accept = next.accept;
        }
        return whole;
      }
      case Node::Kind::kAlternation: {
        const State s = add_state();
        const State t = add_state();
        for (const auto& child : node.children) {
          const Fragment f = build(*child);
          nfa_.epsilon.emplace_back(s, f.start);
          nfa_.epsilon.emplace_back(f.accept, t);
        }
        return {s, t};
      }
      case Node::Kind::kRepeat:
        return build_repeat(node);
    }
    return {0, 0};
  }

 private:
  State add_state() {
    if (nfa_.state_count >= kMaxThompsonStates) {
      throw PatternError(PatternError::Kind::kSyntax, 0, "pattern too large");
    }
    return static_cast<State>(nfa_.state_count++);
  }

  Fragment star(const Node& child) {
    const State s = add_state();
    const State t = add_state();
    const Fragment f = build(child);
    nfa_.epsilon.emplace_back(s, f.start);
    nfa_.epsilon.emplace_back(s, t);
    nfa_.epsilon.emplace_back(f.accept, f.start);
    nfa_.epsilon.emplace_back(f.accept, t);
    return {s, t};
  }

  Fragment optional(const Node& child) {
    const State s = add_state();
    const State t = add_state();
    const Fragment f = build(child);
    nfa_.epsilon.emplace_back(s, f.start);
    nfa_.epsilon.emplace_back(s, t);
    nfa_.epsilon.emplace_back(f.accept, t);
    return {s, t};
  }

  Fragment build_repeat(const Node& node) {
    const Node& child = *node.children.front();
    const State s = add_state();
    State tail = s;
    auto append = [&](Fragment f) {
      nfa_.epsilon.emplace_back(tail, f.start);
      tail = f.accept;
    };
    for (int i = 0; i < node.min; ++i) append(build(child));
    if (node.max == -1) {
      append(star(child));
    } else {
      for (int i = node.min; i < node.max; ++i) append(optional(child));
    }
    return {s, tail};
  }

  ThompsonNfa& nfa_;
};

std::vector<std::vector<State>> epsilon_closures(const ThompsonNfa& nfa) {
  std::vector<std::vector<State>> adj(nfa.state_count);
  for (auto [from, to] : nfa.epsilon) adj[from].push_back(to);
  std::vector<std::vector<State>> closures(nfa.state_count);
  std::vector<std::size_t> seen(nfa.state_count, 0);
  std::size_t stamp = 0;
  for (State p = 0; p < nfa.state_count; ++p) {
    ++stamp;
    std::vector<State> stack{p};
    seen[p] = stamp;
    while (!stack.empty()) {
      const State q = stack.back();
      stack.pop_back();
      closures[p].push_back(q);
      for (State r : adj[q]) {
        if (seen[r] != stamp) {
          seen[r] = stamp;
          stack.push_back(r);
        }
      }
    }
  }
  return closures;
}

// Coarsest forward bisimulation over the non-initial states. Merged states
// have identical right languages, so the accepted language is unchanged.
std::vector<State> bisimulation_classes(std::size_t n, State initial, const std::vector<bool>& final,
                                        const std::vector<std::vector<std::pair<std::uint8_t, State>>>& out) {
  std::vector<State> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = q == initial ? 0 : (final[q] ? 1 : 2);
  std::size_t class_count = 0;
  while (true) {
    std::map<std::pair<State, std::vector<std::pair<std::uint8_t, State>>>, State> ids;
    std::vector<State> next(n);
    for (State q = 0; q < n; ++q) {
      std::vector<std::pair<std::uint8_t, State>> sig;
      sig.reserve(out[q].size());
      for (auto [b, to] : out[q]) sig.emplace_back(b, cls[to]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
      // The initial state stays alone.
      const State key = q == initial ? 0 : cls[q] + 1;
      auto [it, inserted] = ids.try_emplace({key, std::move(sig)}, static_cast<State>(ids.size()));
      next[q] = it->second;
    }
    if (ids.size() == class_count) return next;
    class_count = ids.size();
    cls = std::move(next);
  }
}

}  // namespace

ThompsonNfa build_thompson(std::string_view pattern) {
  Parser parser(pattern);
  NodePtr root = parser.parse();
  ThompsonNfa nfa;
  ThompsonBuilder builder(nfa);
  const auto frag = builder.build(*root);
  nfa.start = frag.start;
  nfa.accept = frag.accept;
  nfa.mentions_newline = parser.mentions_newline();
  return nfa;
}

bool thompson_accepts(const ThompsonNfa& nfa, std::string_view text) {
  const auto closures = epsilon_closures(nfa);
  std::vector<bool> current(nfa.state_count, false);
  for (State q : closures[nfa.start]) current[q] = true;
  for (char c : text) {
    std::vector<bool> next(nfa.state_count, false);
    for (const auto& e : nfa.edges) {
      if (current[e.from] && e.bytes.test(static_cast<std::uint8_t>(c))) {
        for (State q : closures[e.to]) next[q] = true;
      }
    }
    current = std::move(next);
  }
  return current[nfa.accept];
}

Fsa remove_epsilon(const ThompsonNfa& nfa) {
  const auto closures = epsilon_closures(nfa);
  std::vector<std::vector<const ThompsonNfa::ByteEdge*>> edges_from(nfa.state_count);
  for (const auto& e : nfa.edges) edges_from[e.from].push_back(&e);

  // States that survive: the start and every byte-edge target.
  std::vector<bool> kept(nfa.state_count, false);
  kept[nfa.start] = true;
  for (const auto& e : nfa.edges) kept[e.to] = true;

  const std::size_t n = nfa.state_count;
  std::vector<bool> final(n, false);
  std::vector<std::vector<std::pair<std::uint8_t, State>>> out(n);
  for (State p = 0; p < n; ++p) {
    if (!kept[p]) continue;
    for (State q : closures[p]) {
      if (q == nfa.accept) final[p] = true;
      for (const auto* e : edges_from[q]) {
        for (int b = 0; b < 256; ++b) {
          if (b != kNewline && e->bytes.test(static_cast<std::size_t>(b))) {
            out[p].emplace_back(static_cast<std::uint8_t>(b), e->to);
          }
        }
      }
    }
    std::sort(out[p].begin(), out[p].end());
    out[p].erase(std::unique(out[p].begin(), out[p].end()), out[p].end());
  }
  const bool matches_empty = final[nfa.start];
  final[nfa.start] = false;

  // Trim to states reachable from the start that can reach a final state.
  std::vector<bool> reachable(n, false);
  std::vector<State> stack{nfa.start};
  reachable[nfa.start] = true;
  std::vector<std::vector<State>> reverse(n);
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (auto [b, to] : out[q]) {
      reverse[to].push_back(q);
      if (!reachable[to]) {
        reachable[to] = true;
        stack.push_back(to);
      }
    }
  }
  std::vector<bool> useful(n, false);
  for (State q = 0; q < n; ++q) {
    if (reachable[q] && final[q]) {
      useful[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (State from : reverse[q]) {
      if (!useful[from]) {
        useful[from] = true;
        stack.push_back(from);
      }
    }
  }
  useful[nfa.start] = true;

  // Compact, then merge bisimilar states.
  std::vector<State> compact(n, 0);
  std::size_t m = 0;
  for (State q = 0; q < n; ++q) {
    if (useful[q]) compact[q] = static_cast<State>(m++);
  }
  std::vector<bool> cfinal(m, false);
  std::vector<std::vector<std::pair<std::uint8_t, State>>> cedges(m);
  for (State q = 0; q < n; ++q) {
    if (!useful[q]) continue;
    cfinal[compact[q]] = final[q];
    for (auto [b, to] : out[q]) {
      if (useful[to]) cedges[compact[q]].emplace_back(b, compact[to]);
    }
  }
  const State cstart = compact[nfa.start];
  std::vector<State> cls(m);
  if (m <= kMaxMergeStates) {
    cls = bisimulation_classes(m, cstart, cfinal, cedges);
  } else {
    for (State q = 0; q < m; ++q) cls[q] = q;
  }

  // Renumber classes breadth-first from the start so the initial state is 0.
  std::vector<State> rep;  // representative member per final id
  std::deque<State> queue{cstart};
  std::vector<State> final_id_of_class(m, static_cast<State>(-1));
  final_id_of_class[cls[cstart]] = 0;
  rep.push_back(cstart);
  while (!queue.empty()) {
    const State q = queue.front();
    queue.pop_front();
    for (auto [b, to] : cedges[q]) {
      if (final_id_of_class[cls[to]] == static_cast<State>(-1)) {
        final_id_of_class[cls[to]] = static_cast<State>(rep.size());
        rep.push_back(to);
        queue.push_back(to);
      }
    }
  }
  std::vector<Transition> transitions;
  std::vector<State> finals;
  for (State id = 0; id < rep.size(); ++id) {
    const State q = rep[id];
    if (cfinal[q]) finals.push_back(id);
    for (auto [b, to] : cedges[q]) transitions.push_back({id, b, final_id_of_class[cls[to]]});
  }
  return Fsa(rep.size(), {0}, std::move(finals), transitions, matches_empty);
}

Fsa compile(std::string_view pattern) {
  const ThompsonNfa nfa = build_thompson(pattern);
  Fsa fsa = remove_epsilon(nfa);
  if (nfa.mentions_newline && !fsa.matches_empty() && fsa.finals().empty()) {
    throw PatternError(PatternError::Kind::kNewline, 0, "newline in pattern");
  }
  return fsa;
}

}  // namespace slpgrep
