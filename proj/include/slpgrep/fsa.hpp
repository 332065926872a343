#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace slpgrep {

using State = std::uint32_t;

struct Transition {
  State from;
  std::uint8_t byte;
  State to;
};

// Epsilon-free automaton over the bytes other than '\n'. Initial and final
// states are disjoint; acceptance of the empty string is carried separately
// in matches_empty.
class Fsa {
 public:
  // Throws std::invalid_argument if a transition is labelled '\n', a state id
  // is out of range, or initials and finals intersect.
  Fsa(std::size_t state_count, std::vector<State> initials, std::vector<State> finals,
      std::span<const Transition> transitions, bool matches_empty);

  std::size_t state_count() const { return state_count_; }
  const std::vector<State>& initials() const { return initials_; }
  const std::vector<State>& finals() const { return finals_; }
  bool is_initial(State q) const { return initial_mask_[q]; }
  bool is_final(State q) const { return final_mask_[q]; }
  bool matches_empty() const { return matches_empty_; }

  std::span<const State> successors(State q, std::uint8_t byte) const {
    const auto& v = successors_[std::size_t{q} * 256 + byte];
    return {v.data(), v.size()};
  }

  // All (from, to) pairs labelled `byte`, ordered by source state.
  std::vector<std::pair<State, State>> transitions_on(std::uint8_t byte) const;

  std::size_t transition_count() const { return transition_count_; }

  // At most one initial state and at most one successor per (state, byte).
  bool is_deterministic() const;

 private:
  std::size_t state_count_;
  std::vector<State> initials_;
  std::vector<State> finals_;
  std::vector<bool> initial_mask_;
  std::vector<bool> final_mask_;
  std::vector<std::vector<State>> successors_;
  std::size_t transition_count_ = 0;
  bool matches_empty_;
};

// Automaton with the same matching lines as `fsa`, shaped for saturation:
// final states lose their outgoing transitions (a line holding a match holds
// a shortest one) and initial states with incoming transitions are replaced
// by fresh initial copies. Keeps state ids when compile() built `fsa`.
Fsa factor_search_automaton(const Fsa& fsa);

// Subset simulation. Throws Error if `text` contains '\n'.
bool nfa_accepts(const Fsa& fsa, std::string_view text);

}  // namespace slpgrep
