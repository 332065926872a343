#include <doctest.h>

#include <optional>
#include <string>
#include <vector>

#include "slpgrep/error.hpp"
#include "slpgrep/oracle.hpp"
#include "slpgrep/regex.hpp"
#include "testkit.hpp"

using namespace slpgrep;

namespace {

std::vector<std::string> all_strings(std::string_view alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& s : layer) {
      for (char c : alphabet) next.push_back(s + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer.swap(next);
  }
  return out;
}

PatternError::Kind pattern_error(std::string_view p) {
  try {
    compile(p);
  } catch (const PatternError& e) {
    return e.kind();
  }
  FAIL("pattern accepted: " << p);
  return PatternError::Kind::kSyntax;
}

}  // namespace

TEST_CASE("ab|ba") {
  const Fsa fsa = compile("ab|ba");
  CHECK(fsa.state_count() == 4);
  CHECK_FALSE(fsa.matches_empty());
  CHECK(fsa.initials() == std::vector<State>{0});
  for (const auto& s : all_strings("abc", 3)) {
    CHECK_MESSAGE(nfa_accepts(fsa, s) == (s == "ab" || s == "ba"), s);
  }
}

TEST_CASE("star accepts the empty string through matches_empty") {
  const Fsa fsa = compile("a*");
  CHECK(fsa.matches_empty());
  CHECK(nfa_accepts(fsa, ""));
  CHECK(nfa_accepts(fsa, "aaa"));
  CHECK_FALSE(nfa_accepts(fsa, "ab"));
  for (State q : fsa.initials()) CHECK_FALSE(fsa.is_final(q));
}

TEST_CASE("dot matches every byte but newline") {
  const Fsa fsa = compile(".");
  for (int b = 0; b < 256; ++b) {
    if (b == '\n') continue;
    CHECK(nfa_accepts(fsa, std::string(1, static_cast<char>(b))));
  }
  CHECK_FALSE(nfa_accepts(fsa, ""));
  CHECK_FALSE(nfa_accepts(fsa, "aa"));
  CHECK(fsa.successors(0, '\n').empty());
}

TEST_CASE("nfa_accepts rejects newline input") {
  CHECK_THROWS_AS(nfa_accepts(compile("a"), "a\n"), Error);
}

TEST_CASE("syntax") {
  CHECK(nfa_accepts(compile("[a-c]x"), "bx"));
  CHECK_FALSE(nfa_accepts(compile("[^a-c]"), "b"));
  CHECK(nfa_accepts(compile("[^a-c]"), "d"));
  CHECK(nfa_accepts(compile("a{2,3}"), "aaa"));
  CHECK_FALSE(nfa_accepts(compile("a{2,3}"), "aaaa"));
  CHECK(nfa_accepts(compile("a{2,}"), "aaaaa"));
  CHECK(nfa_accepts(compile("\\x41\\.\\t"), "A.\t"));
  CHECK(nfa_accepts(compile("^$"), "^$"));
  CHECK(nfa_accepts(compile("(ab)+"), "ababab"));
  CHECK(nfa_accepts(compile("[]a]"), "]"));
}

TEST_CASE("pattern errors") {
  CHECK(pattern_error("ab(") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("a)") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("*a") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("[ab") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("a{3,1}") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("\\q") == PatternError::Kind::kSyntax);
  CHECK(pattern_error("a\\nb") == PatternError::Kind::kNewline);
  CHECK(std::string(PatternError(PatternError::Kind::kSyntax, 3, "x").what()).find("syntax error") !=
        std::string::npos);
  // A spelled newline is harmless when something newline-free still matches.
  CHECK(nfa_accepts(compile("a|\\n"), "a"));
}

TEST_CASE("epsilon removal preserves the newline-free language") {
  testkit::Rng rng(21);
  const auto words = all_strings("ab", 5);
  for (int i = 0; i < 300; ++i) {
    const std::string p = testkit::random_pattern(rng, "ab");
    const ThompsonNfa nfa = build_thompson(p);
    const Fsa fsa = remove_epsilon(nfa);
    for (const auto& w : words) {
      REQUIRE_MESSAGE(nfa_accepts(fsa, w) == thompson_accepts(nfa, w), p << " on " << w);
    }
  }
}

TEST_CASE("compiler agrees with the independent reference matcher") {
  testkit::Rng rng(22);
  const auto words = all_strings("abc", 4);
  for (int i = 0; i < 300; ++i) {
    const std::string p = testkit::random_pattern(rng, "abc");
    const Fsa fsa = compile(p);
    for (const auto& w : words) {
      REQUIRE_MESSAGE(nfa_accepts(fsa, w) == oracle::reference_match(p, w), p << " on " << w);
    }
  }
}

TEST_CASE("compiled automata respect their invariants") {
  testkit::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    std::optional<Fsa> compiled;
    try {
      compiled.emplace(compile(testkit::random_pattern(rng, "ab.\n")));
    } catch (const PatternError& e) {
      CHECK(e.kind() == PatternError::Kind::kNewline);
      continue;
    }
    const Fsa& fsa = *compiled;
    for (State q = 0; q < fsa.state_count(); ++q) {
      CHECK_FALSE((fsa.is_initial(q) && fsa.is_final(q)));
      CHECK(fsa.successors(q, '\n').empty());
    }
    for (State q : fsa.initials()) {
      for (int b = 0; b < 256; ++b) {
        for (State from = 0; from < fsa.state_count(); ++from) {
          for (State to : fsa.successors(from, static_cast<std::uint8_t>(b))) CHECK(to != q);
        }
      }
    }
  }
}
