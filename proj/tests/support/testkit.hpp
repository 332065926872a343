#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slpgrep/fsa.hpp"
#include "slpgrep/search.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep::testkit {

using Rng = std::mt19937_64;

// Grammar generating "ba\nab\naba" with the axiom [X3, X7].
Slp three_line_slp();

// Alphabets for random text.
inline constexpr std::string_view kAbNewline = "ab\n";
std::string printable_ascii_with_newline();

std::string random_text(Rng& rng, std::string_view alphabet, std::size_t max_len);

// Text with random bytes, 0x00 and runs of '\n'.
std::string random_binary(Rng& rng, std::size_t max_len);

// Random pattern of the supported dialect over `letters`.
std::string random_pattern(Rng& rng, std::string_view letters, int depth = 3);

// Random SLP over `alphabet` whose variables expand to at most `max_expansion` bytes.
Slp random_slp(Rng& rng, std::string_view alphabet, std::size_t max_rules,
               std::size_t max_expansion, std::size_t max_axiom);

// Pairs (q1, q2) connected by reading a non-empty factor u[i..j) of u with
// i == 0 or q1 initial, and j == |u| or q2 final.
std::set<StatePair> brute_force_edges(const Fsa& fsa, std::string_view u);

// <nl, left, right, count> of u straight from the line definitions.
CountInfo definitional_info(const Fsa& fsa, std::string_view u);

// Textbook rescan RePair with the same counting and tie-breaking rules.
Slp naive_repair(std::string_view text);

// Left-fold chain grammar: S1 -> s0 s1, Si -> S(i-1) s(i), axiom [S(n-1)].
Slp chain_grammar(const Slp& slp);

}  // namespace slpgrep::testkit
