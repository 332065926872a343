#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slpgrep/fsa.hpp"

// Brute-force reference used to check the compressed-domain search. Nothing
// here shares code with the engine's counting path.
namespace slpgrep::oracle {

// '\n'-separated segments; a trailing '\n' does not open a final empty line.
std::vector<std::string_view> split_lines(std::string_view text);

// Some factor of `line` is accepted: every start position, subset simulation.
bool line_matches(const Fsa& fsa, std::string_view line);

// Same question answered by one pass of the automaton for .*L.* (the initial
// states are re-entered before every byte).
bool line_matches_wrapped(const Fsa& fsa, std::string_view line);

std::vector<std::string> oracle_lines(std::string_view text, std::string_view pattern);
std::uint64_t oracle_count(std::string_view text, std::string_view pattern);

// Whole-string membership decided straight from the pattern text with a
// separate parser and an exhaustive end-position search. Same dialect as
// compile(). Throws PatternError on syntax errors.
bool reference_match(std::string_view pattern, std::string_view text);

}  // namespace slpgrep::oracle
