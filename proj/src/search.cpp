#include "slpgrep/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "slpgrep/error.hpp"

namespace slpgrep {
namespace {

constexpr State kRowEnd = std::numeric_limits<State>::max();
constexpr std::int64_t kNoWriter = -1;

}  // namespace

CountInfo count_combine(const CountInfo& first, const CountInfo& second, bool boundary_match) {
  CountInfo out;
  out.nl = first.nl || second.nl;
  out.left = !first.nl ? (first.left || second.left || boundary_match) : first.left;
  out.right = !second.nl ? (first.right || second.right || boundary_match) : second.right;
  out.count = first.count + second.count +
              ((first.nl && second.nl && (first.right || second.left || boundary_match)) ? 1 : 0);
  return out;
}

std::uint64_t matching_lines(const CountInfo& info) {
  return info.count + (info.left ? 1 : 0) + (info.nl && info.right ? 1 : 0);
}

std::array<SymbolEntry, 256> init_terminals(const Fsa& fsa) {
  std::array<SymbolEntry, 256> table;
  for (int b = 0; b < 256; ++b) {
    const auto byte = static_cast<std::uint8_t>(b);
    SymbolEntry& e = table[b];
    e.info.nl = byte == kNewline;
    for (auto [from, to] : fsa.transitions_on(byte)) {
      e.edges.push_back({from, to});
      if (fsa.is_initial(from) && fsa.is_final(to)) e.info.left = true;
    }
    e.info.right = e.info.left;
  }
  return table;
}

Percentiles nearest_rank_percentiles(std::vector<std::uint64_t> values) {
  Percentiles p;
  if (values.empty()) return p;
  std::sort(values.begin(), values.end());
  const auto at = [&](double pct) {
    const auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * values.size()));
    return values[std::max<std::size_t>(rank, 1) - 1];
  };
  p.p50 = at(50);
  p.p75 = at(75);
  p.p95 = at(95);
  p.p98 = at(98);
  p.p100 = values.back();
  return p;
}

Engine::Engine(const Fsa& fsa, EngineOptions options)
    : fsa_(factor_search_automaton(fsa)),
      options_(std::move(options)),
      states_(fsa_.state_count()),
      deterministic_(fsa_.is_deterministic()),
      m_matrix_(states_ * states_, kNoWriter),
      n_matrix_(states_ * (states_ + 1), kRowEnd),
      n_row_len_(states_, 0),
      reach_mark_(states_, 0) {
  auto terminals = init_terminals(fsa_);
  table_.reserve(256);
  for (auto& e : terminals) table_.push_back(std::move(e));
  stats_.states = states_;
  stats_.deterministic = deterministic_;
}

void Engine::load_n(const std::vector<StatePair>& edges) {
  std::uint64_t& ops = stats_.measured_ops;
  for (State q : n_touched_) {
    row(q)[0] = kRowEnd;
    n_row_len_[q] = 0;
    ++ops;
  }
  n_touched_.clear();
  for (const StatePair& e : edges) {
    if (n_row_len_[e.from] == 0) n_touched_.push_back(e.from);
    row(e.from)[n_row_len_[e.from]++] = e.to;
    ++ops;
  }
  for (State q : n_touched_) {
    row(q)[n_row_len_[q]] = kRowEnd;
    ++ops;
    stats_.max_n_row = std::max<std::size_t>(stats_.max_n_row, n_row_len_[q]);
    if (options_.assert_single_state_rows && deterministic_ && n_row_len_[q] > 1) {
      throw std::logic_error("deterministic automaton but N row " + std::to_string(q) + " holds " +
                             std::to_string(n_row_len_[q]) + " states");
    }
  }
}

void Engine::process_rule(const Rule& rule) {
  if (rule.left != table_.size()) {
    throw InvalidSlpError("rule for symbol " + std::to_string(rule.left) + " out of order");
  }
  if (rule.first >= rule.left || rule.second >= rule.left) {
    throw InvalidSlpError("rule for symbol " + std::to_string(rule.left) +
                          " references an undefined symbol");
  }
  const SymbolEntry& alpha = table_[rule.first];
  const SymbolEntry& beta = table_[rule.second];
  load_n(beta.edges);

  std::uint64_t& ops = stats_.measured_ops;
  const auto writer = static_cast<std::int64_t>(rule.left);
  SymbolEntry out;
  bool boundary_match = false;
  std::uint64_t s_tilde = beta.edges.size() + states_;

  const auto emit = [&](State q1, State mid, State q2) {
    ++ops;
    std::int64_t& cell = m_matrix_[std::size_t{q1} * states_ + q2];
    if (cell != writer) {
      cell = writer;
      out.edges.push_back({q1, q2});
    }
    if (fsa_.is_initial(q1) && !fsa_.is_initial(mid) && !fsa_.is_final(mid) && fsa_.is_final(q2)) {
      boundary_match = true;
    }
  };
  const auto extend = [&](State q1, State mid) {
    ++ops;
    for (const State* p = row(mid); *p != kRowEnd; ++p) emit(q1, mid, *p);
    if (fsa_.is_final(mid)) emit(q1, mid, mid);
  };

  for (const StatePair& e : alpha.edges) {
    s_tilde += 1 + n_row_len_[e.to];
    extend(e.from, e.to);
  }
  for (State q : fsa_.initials()) extend(q, q);

  out.info = count_combine(alpha.info, beta.info, boundary_match);

  if (options_.check_invariants) {
    auto sorted = out.edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::logic_error("duplicate pair in edges of symbol " + std::to_string(rule.left));
    }
  }
  stats_.per_rule.push_back(s_tilde);
  ++stats_.rules;
  if (options_.trace) {
    options_.trace({TraceEvent::Kind::kRule, rule.left, 0, out.info, boundary_match});
  }
  table_.push_back(std::move(out));
}

void Engine::record_reach_size() {
  const std::size_t size = reach_open_.size() + reach_final_.size();
  stats_.max_reach_set = std::max(stats_.max_reach_set, size);
  if (options_.assert_single_state_rows && deterministic_ && size > 1) {
    throw std::logic_error("deterministic automaton but reachable set holds " +
                           std::to_string(size) + " states");
  }
}

void Engine::start_fold(SymbolId first) {
  for (State q : reach_open_) reach_mark_[q] = 0;
  for (State q : reach_final_) reach_mark_[q] = 0;
  reach_open_.clear();
  reach_final_.clear();
  const auto& edges = table_[first].edges;
  stats_.per_axiom_symbol.push_back(edges.size());
  ++stats_.axiom_len;
  for (const StatePair& e : edges) {
    ++stats_.measured_ops;
    if (!fsa_.is_initial(e.from) || (reach_mark_[e.to] & 1)) continue;
    reach_mark_[e.to] |= 1;
    (fsa_.is_final(e.to) ? reach_final_ : reach_open_).push_back(e.to);
  }
  record_reach_size();
}

// R' = {q2 | q' in R or I, (q', sym, q2)} plus the finals already in R.
// Returns whether a match crosses into `sym` from a state in R outside I and F.
bool Engine::fold_step(SymbolId sym) {
  std::uint64_t& ops = stats_.measured_ops;
  const auto& edges = table_[sym].edges;
  stats_.per_axiom_symbol.push_back(edges.size());
  ++stats_.axiom_len;
  bool boundary_match = false;
  next_open_.clear();
  next_final_.clear();
  for (const StatePair& e : edges) {
    ++ops;
    const bool in_reach = reach_mark_[e.from] & 1;
    if (!in_reach && !fsa_.is_initial(e.from)) continue;
    if (in_reach && !fsa_.is_initial(e.from) && !fsa_.is_final(e.from) && fsa_.is_final(e.to)) {
      boundary_match = true;
    }
    if (reach_mark_[e.to] & 2) continue;
    reach_mark_[e.to] |= 2;
    (fsa_.is_final(e.to) ? next_final_ : next_open_).push_back(e.to);
  }
  for (State q : reach_open_) {
    reach_mark_[q] &= ~1;
    ++ops;
  }
  for (State q : next_open_) reach_mark_[q] = 1;
  reach_open_.swap(next_open_);
  for (State q : next_final_) {
    reach_mark_[q] &= ~2;
    if (!(reach_mark_[q] & 1)) {
      reach_mark_[q] |= 1;
      reach_final_.push_back(q);
    }
  }
  record_reach_size();
  return boundary_match;
}

CountInfo Engine::process_axiom(std::span<const SymbolId> axiom) {
  if (axiom.empty()) throw InvalidSlpError("empty axiom");
  for (SymbolId sym : axiom) {
    if (sym >= table_.size()) throw InvalidSlpError("axiom references undefined symbol " + std::to_string(sym));
  }
  start_fold(axiom.front());
  CountInfo info = table_[axiom.front()].info;
  if (options_.trace) options_.trace({TraceEvent::Kind::kAxiomStep, axiom.front(), 0, info, false});
  for (std::size_t i = 1; i < axiom.size(); ++i) {
    const bool boundary_match = fold_step(axiom[i]);
    info = count_combine(info, table_[axiom[i]].info, boundary_match);
    if (options_.trace) {
      options_.trace({TraceEvent::Kind::kAxiomStep, axiom[i], i, info, boundary_match});
    }
  }
  return info;
}

bool Engine::axiom_contains_match(std::span<const SymbolId> axiom) {
  if (axiom.empty()) throw InvalidSlpError("empty axiom");
  for (SymbolId sym : axiom) {
    if (sym >= table_.size()) throw InvalidSlpError("axiom references undefined symbol " + std::to_string(sym));
  }
  start_fold(axiom.front());
  for (std::size_t i = 1; reach_final_.empty() && i < axiom.size(); ++i) fold_step(axiom[i]);
  return !reach_final_.empty();
}

SearchStats Engine::stats() const {
  SearchStats out = stats_;
  out.rule_percentiles = nearest_rank_percentiles(out.per_rule);
  out.axiom_percentiles = nearest_rank_percentiles(out.per_axiom_symbol);
  return out;
}

namespace {

// Newline count and last byte per symbol, built bottom-up as rules stream by.
class LineCounter {
 public:
  LineCounter() : newlines_(256, 0), last_(256) {
    for (int b = 0; b < 256; ++b) {
      newlines_[b] = b == kNewline ? 1 : 0;
      last_[b] = static_cast<std::uint8_t>(b);
    }
  }

  void add(const Rule& rule) {
    newlines_.push_back(newlines_[rule.first] + newlines_[rule.second]);
    last_.push_back(last_[rule.second]);
  }

  std::uint64_t lines(std::span<const SymbolId> axiom) const {
    std::uint64_t total = 0;
    for (SymbolId sym : axiom) total += newlines_[sym];
    return total + (last_[axiom.back()] != kNewline ? 1 : 0);
  }

 private:
  std::vector<std::uint64_t> newlines_;
  std::vector<std::uint8_t> last_;
};

}  // namespace

std::uint64_t count_lines(const Slp& slp) {
  require_valid(slp);
  LineCounter counter;
  for (const Rule& r : slp.rules) counter.add(r);
  return counter.lines(slp.axiom);
}

std::uint64_t count_lines(SlpReader& reader) {
  LineCounter counter;
  while (auto rule = reader.next_rule()) counter.add(*rule);
  return counter.lines(reader.read_axiom());
}

std::uint64_t count_matching_lines(const Slp& slp, const Fsa& fsa) {
  require_valid(slp);
  if (fsa.matches_empty()) return count_lines(slp);
  Engine engine(fsa);
  for (const Rule& r : slp.rules) engine.process_rule(r);
  return matching_lines(engine.process_axiom(slp.axiom));
}

std::uint64_t count_matching_lines(SlpReader& reader, const Fsa& fsa) {
  if (fsa.matches_empty()) return count_lines(reader);
  Engine engine(fsa);
  while (auto rule = reader.next_rule()) engine.process_rule(*rule);
  const auto axiom = reader.read_axiom();
  return matching_lines(engine.process_axiom(axiom));
}

bool contains_match(const Slp& slp, const Fsa& fsa) {
  require_valid(slp);
  if (fsa.matches_empty()) return true;
  Engine engine(fsa);
  for (const Rule& r : slp.rules) engine.process_rule(r);
  return engine.axiom_contains_match(slp.axiom);
}

bool contains_match(SlpReader& reader, const Fsa& fsa) {
  if (fsa.matches_empty()) {
    while (reader.next_rule()) {
    }
    reader.read_axiom();
    return true;
  }
  Engine engine(fsa);
  while (auto rule = reader.next_rule()) engine.process_rule(*rule);
  const auto axiom = reader.read_axiom();
  return engine.axiom_contains_match(axiom);
}

SearchStats collect_stats(const Slp& slp, const Fsa& fsa) {
  require_valid(slp);
  Engine engine(fsa);
  for (const Rule& r : slp.rules) engine.process_rule(r);
  engine.process_axiom(slp.axiom);
  return engine.stats();
}

SearchStats collect_stats(SlpReader& reader, const Fsa& fsa) {
  Engine engine(fsa);
  while (auto rule = reader.next_rule()) engine.process_rule(*rule);
  const auto axiom = reader.read_axiom();
  engine.process_axiom(axiom);
  return engine.stats();
}

}  // namespace slpgrep
