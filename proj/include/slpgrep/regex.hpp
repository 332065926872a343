#pragma once

#include <bitset>
#include <string_view>
#include <utility>
#include <vector>

#include "slpgrep/fsa.hpp"

namespace slpgrep {

// Thompson automaton with epsilon moves, exactly as built from the syntax
// tree. Byte edges carry a byte set; '\n' may appear in it.
struct ThompsonNfa {
  struct ByteEdge {
    State from;
    std::bitset<256> bytes;
    State to;
  };

  std::size_t state_count = 0;
  State start = 0;
  State accept = 0;
  std::vector<std::pair<State, State>> epsilon;
  std::vector<ByteEdge> edges;
  bool mentions_newline = false;  // pattern spelled a '\n' explicitly
};

// Supported syntax: literals, backslash escapes (\n \t \r \f \v \xHH and any
// escaped punctuation), '.', bracket classes with ranges and negation,
// grouping, '|', '*', '+', '?', and bounded repetition {m}, {m,}, {m,n}.
// '^' and '$' are ordinary characters. Throws PatternError.
ThompsonNfa build_thompson(std::string_view pattern);

// Simulation with epsilon closure; newline bytes are treated like any other.
bool thompson_accepts(const ThompsonNfa& nfa, std::string_view text);

// Epsilon removal without adding states, newline transitions dropped, then
// trimming and bisimulation merging. The initial state never has incoming
// transitions; when the empty string is accepted it is recorded in
// matches_empty instead of making the initial state final.
Fsa remove_epsilon(const ThompsonNfa& nfa);

// build_thompson + remove_epsilon. Additionally throws PatternError (newline)
// when the pattern spells a newline and nothing newline-free can match.
Fsa compile(std::string_view pattern);

}  // namespace slpgrep
