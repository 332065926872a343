#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "slpgrep/fsa.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep {

// Counting information of a symbol generating u:
//   nl    - u contains '\n'
//   left  - the first line of u (up to the first '\n') contains a match
//   right - the last line of u (after the last '\n') contains a match
//   count - number of matching lines enclosed by two '\n' inside u
// Without a newline, left == right and count == 0.
struct CountInfo {
  bool nl = false;
  bool left = false;
  bool right = false;
  std::uint64_t count = 0;

  friend bool operator==(const CountInfo&, const CountInfo&) = default;
};

// Combines the information of the two halves of a rule; `boundary_match`
// says a match spans the boundary without lying inside either half.
CountInfo count_combine(const CountInfo& first, const CountInfo& second, bool boundary_match);

// Number of matching lines in the whole string described by `info`.
std::uint64_t matching_lines(const CountInfo& info);

struct StatePair {
  State from;
  State to;

  friend bool operator==(const StatePair&, const StatePair&) = default;
  friend auto operator<=>(const StatePair&, const StatePair&) = default;
};

// One slot of the symbol array: counting information and the saturated
// transitions (q1, symbol, q2) stored as state pairs.
struct SymbolEntry {
  CountInfo info;
  std::vector<StatePair> edges;
};

std::array<SymbolEntry, 256> init_terminals(const Fsa& fsa);

struct TraceEvent {
  enum class Kind { kRule, kAxiomStep };

  Kind kind;
  // kRule: the variable just defined. kAxiomStep: the axiom symbol folded in.
  SymbolId symbol;
  std::size_t axiom_index;  // 0-based; meaningful for kAxiomStep
  CountInfo info;           // of the rule's variable, or of the axiom prefix
  bool boundary_match;
};

struct EngineOptions {
  // Check that no edge list holds a duplicate pair. Throws std::logic_error.
  bool check_invariants = false;
  // When the automaton is deterministic, throw std::logic_error as soon as an
  // N row or the reachable set of the axiom fold holds more than one state.
  bool assert_single_state_rows = false;
  std::function<void(const TraceEvent&)> trace;
};

// Nearest-rank percentiles; 0 for an empty sequence.
struct Percentiles {
  std::uint64_t p50 = 0, p75 = 0, p95 = 0, p98 = 0, p100 = 0;

  friend bool operator==(const Percentiles&, const Percentiles&) = default;
};

Percentiles nearest_rank_percentiles(std::vector<std::uint64_t> values);

struct SearchStats {
  std::size_t states = 0;      // s
  std::size_t rules = 0;       // p
  std::size_t axiom_len = 0;   // |sigma|
  // Per rule: s_beta + s + sum over (q1,q') in edges(alpha) of (1 + s_{beta,q'}).
  std::vector<std::uint64_t> per_rule;
  // Per axiom symbol: number of saturated transitions of that symbol.
  std::vector<std::uint64_t> per_axiom_symbol;
  Percentiles rule_percentiles;
  Percentiles axiom_percentiles;
  // Elementary steps actually executed by the engine loops.
  std::uint64_t measured_ops = 0;
  std::size_t max_n_row = 0;      // largest N row seen
  std::size_t max_reach_set = 0;  // largest reachable set in the axiom fold
  bool deterministic = false;
};

// Saturates rules fed in file order. Owns the symbol array and the M/N
// scratch matrices; single-threaded. Works on factor_search_automaton(fsa),
// which fsa() returns; edges use its state ids.
class Engine {
 public:
  explicit Engine(const Fsa& fsa, EngineOptions options = {});

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // Rules must arrive in order: rule.left == 256 + rules processed so far.
  void process_rule(const Rule& rule);

  // Left fold over the axiom that keeps only the set of states reachable
  // from the initial states instead of materialising the chain rules.
  CountInfo process_axiom(std::span<const SymbolId> axiom);

  // Decision variant: true iff some line contains a match. Stops reading the
  // axiom as soon as a final state becomes reachable.
  bool axiom_contains_match(std::span<const SymbolId> axiom);

  const SymbolEntry& entry(SymbolId id) const { return table_[id]; }
  std::size_t symbol_count() const { return table_.size(); }
  const Fsa& fsa() const { return fsa_; }

  // Percentiles are filled in here.
  SearchStats stats() const;

 private:
  State* row(State q) { return n_matrix_.data() + std::size_t{q} * (states_ + 1); }
  void load_n(const std::vector<StatePair>& edges);
  void start_fold(SymbolId first);
  bool fold_step(SymbolId sym);
  void record_reach_size();

  Fsa fsa_;
  EngineOptions options_;
  std::size_t states_;
  bool deterministic_;
  std::vector<SymbolEntry> table_;

  // M[q1][q2] = last variable for which (q1, X, q2) was added.
  std::vector<std::int64_t> m_matrix_;
  // N[q] = states reachable from q by the current second symbol, sentinel-terminated.
  std::vector<State> n_matrix_;
  std::vector<std::uint32_t> n_row_len_;
  std::vector<State> n_touched_;

  // Axiom fold state: finals are sticky, the rest is rebuilt per symbol.
  // Bit 0: in the current reachable set R. Bit 1: already queued for R'.
  std::vector<std::uint8_t> reach_mark_;
  std::vector<State> reach_open_;
  std::vector<State> reach_final_;
  std::vector<State> next_open_;
  std::vector<State> next_final_;

  SearchStats stats_;
};

// Matching-line count. Patterns accepting the empty string match every line;
// that case is answered from newline bookkeeping alone.
std::uint64_t count_matching_lines(const Slp& slp, const Fsa& fsa);
std::uint64_t count_matching_lines(SlpReader& reader, const Fsa& fsa);

bool contains_match(const Slp& slp, const Fsa& fsa);
bool contains_match(SlpReader& reader, const Fsa& fsa);

SearchStats collect_stats(const Slp& slp, const Fsa& fsa);
SearchStats collect_stats(SlpReader& reader, const Fsa& fsa);

// Lines of the expansion: '\n'-separated segments, a trailing '\n' does not
// open a final empty line.
std::uint64_t count_lines(const Slp& slp);
std::uint64_t count_lines(SlpReader& reader);

}  // namespace slpgrep
