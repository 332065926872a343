#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slpgrep {

// 0..255 are terminal bytes; 256 + i is the variable defined by rule i
// (0-based), so rule ids are dense and directly index-addressable.
using SymbolId = std::uint32_t;

inline constexpr SymbolId kFirstVariable = 256;
inline constexpr std::uint8_t kNewline = 0x0A;

constexpr bool is_terminal(SymbolId id) { return id < kFirstVariable; }
constexpr SymbolId variable_for_rule(std::size_t rule_index) {
  return kFirstVariable + static_cast<SymbolId>(rule_index);
}
constexpr std::size_t rule_index_of(SymbolId id) { return id - kFirstVariable; }

// left -> first second
struct Rule {
  SymbolId left;
  SymbolId first;
  SymbolId second;

  friend bool operator==(const Rule&, const Rule&) = default;
};

// Straight-line program with a RePair-style axiom: binary rules in
// topological order followed by an arbitrary-length top-level sequence.
struct Slp {
  std::vector<Rule> rules;
  std::vector<SymbolId> axiom;

  friend bool operator==(const Slp&, const Slp&) = default;

  bool defines(SymbolId id) const {
    return is_terminal(id) || rule_index_of(id) < rules.size();
  }
  const Rule& rule_for(SymbolId id) const { return rules[rule_index_of(id)]; }
};

struct Violation {
  std::optional<std::size_t> rule;  // 1-based, absent for axiom-level issues
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Empty result means the grammar is valid.
std::vector<Violation> validate_slp(const Slp& slp);

// Throws InvalidSlpError listing the first violation.
void require_valid(const Slp& slp);

std::string expand_symbol(const Slp& slp, SymbolId sym);
std::string expand(const Slp& slp);

// Appends the expansion of `sym` to `out` without recursion.
void append_expansion(const Slp& slp, SymbolId sym, std::string& out);

// ZSLP binary format:
//   "ZSLP" | version byte (1) | varint p | p x (varint first, varint second)
//   | varint axiom length | axiom symbols as varints
// Rule i's left-hand side is implicit (256 + i).
inline constexpr char kMagic[4] = {'Z', 'S', 'L', 'P'};
inline constexpr std::uint8_t kFormatVersion = 1;

std::vector<std::uint8_t> encode_slp(const Slp& slp);
Slp decode_slp(std::span<const std::uint8_t> bytes);
Slp read_slp(std::istream& in);

// Single-pass reader: the header on construction, then rules one at a time,
// then the axiom. Each rule is checked against the rules read so far.
class SlpReader {
 public:
  explicit SlpReader(std::istream& in);

  std::uint64_t rule_count() const { return rule_count_; }
  std::uint64_t rules_read() const { return rules_read_; }

  // nullopt once all rules have been consumed.
  std::optional<Rule> next_rule();

  // Must be called after the last rule. Rejects trailing bytes.
  std::vector<SymbolId> read_axiom();

 private:
  std::uint64_t read_number(const char* what);

  std::istream& in_;
  std::uint64_t rule_count_ = 0;
  std::uint64_t rules_read_ = 0;
  bool axiom_read_ = false;
};

}  // namespace slpgrep
