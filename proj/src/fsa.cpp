#include "slpgrep/fsa.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "slpgrep/error.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep {

namespace {

std::vector<State> sorted_unique(std::vector<State> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Fsa::Fsa(std::size_t state_count, std::vector<State> initials, std::vector<State> finals,
         std::span<const Transition> transitions, bool matches_empty)
    : state_count_(state_count),
      initials_(sorted_unique(std::move(initials))),
      finals_(sorted_unique(std::move(finals))),
      initial_mask_(state_count, false),
      final_mask_(state_count, false),
      successors_(state_count * 256),
      matches_empty_(matches_empty) {
  auto check = [&](State q) {
    if (q >= state_count_) throw std::invalid_argument("state " + std::to_string(q) + " out of range");
  };
  for (State q : initials_) {
    check(q);
    initial_mask_[q] = true;
  }
  for (State q : finals_) {
    check(q);
    if (initial_mask_[q]) {
      throw std::invalid_argument("state " + std::to_string(q) + " is both initial and final");
    }
    final_mask_[q] = true;
  }
  for (const Transition& t : transitions) {
    check(t.from);
    check(t.to);
    if (t.byte == kNewline) throw std::invalid_argument("transition labelled with newline");
    auto& succ = successors_[std::size_t{t.from} * 256 + t.byte];
    if (std::find(succ.begin(), succ.end(), t.to) == succ.end()) {
      succ.push_back(t.to);
      ++transition_count_;
    }
  }
  for (auto& succ : successors_) std::sort(succ.begin(), succ.end());
}

std::vector<std::pair<State, State>> Fsa::transitions_on(std::uint8_t byte) const {
  std::vector<std::pair<State, State>> out;
  for (State q = 0; q < state_count_; ++q) {
    for (State to : successors(q, byte)) out.emplace_back(q, to);
  }
  return out;
}

bool Fsa::is_deterministic() const {
  if (initials_.size() > 1) return false;
  return std::all_of(successors_.begin(), successors_.end(),
                     [](const auto& succ) { return succ.size() <= 1; });
}

Fsa factor_search_automaton(const Fsa& fsa) {
  const std::size_t n = fsa.state_count();
  std::vector<Transition> kept;
  std::vector<bool> has_incoming(n, false);
  for (State q = 0; q < n; ++q) {
    if (fsa.is_final(q)) continue;
    for (int b = 0; b < 256; ++b) {
      for (State to : fsa.successors(q, static_cast<std::uint8_t>(b))) {
        kept.push_back({q, static_cast<std::uint8_t>(b), to});
        has_incoming[to] = true;
      }
    }
  }
  std::vector<State> initials;
  std::size_t states = n;
  for (State q : fsa.initials()) {
    if (!has_incoming[q]) {
      initials.push_back(q);
      continue;
    }
    const auto copy = static_cast<State>(states++);
    initials.push_back(copy);
    for (int b = 0; b < 256; ++b) {
      for (State to : fsa.successors(q, static_cast<std::uint8_t>(b))) {
        kept.push_back({copy, static_cast<std::uint8_t>(b), to});
      }
    }
  }
  return Fsa(states, std::move(initials), fsa.finals(), kept, fsa.matches_empty());
}

bool nfa_accepts(const Fsa& fsa, std::string_view text) {
  if (text.find(static_cast<char>(kNewline)) != std::string_view::npos) {
    throw Error("nfa_accepts: input contains a newline");
  }
  if (text.empty()) return fsa.matches_empty();
  std::vector<bool> current(fsa.state_count(), false);
  for (State q : fsa.initials()) current[q] = true;
  std::vector<bool> next(fsa.state_count());
  for (char c : text) {
    std::fill(next.begin(), next.end(), false);
    bool any = false;
    for (State q = 0; q < fsa.state_count(); ++q) {
      if (!current[q]) continue;
      for (State to : fsa.successors(q, static_cast<std::uint8_t>(c))) {
        next[to] = true;
        any = true;
      }
    }
    if (!any) return false;
    current.swap(next);
  }
  for (State q : fsa.finals()) {
    if (current[q]) return true;
  }
  return false;
}

}  // namespace slpgrep
