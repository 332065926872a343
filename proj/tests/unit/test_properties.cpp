#include <doctest.h>

#include <set>
#include <sstream>

#include "slpgrep/oracle.hpp"
#include "slpgrep/regex.hpp"
#include "slpgrep/repair.hpp"
#include "slpgrep/reporter.hpp"
#include "slpgrep/search.hpp"
#include "testkit.hpp"

using namespace slpgrep;

namespace {

Fsa small_pattern(testkit::Rng& rng, std::string_view letters, std::size_t max_states) {
  for (;;) {
    const Fsa fsa = compile(testkit::random_pattern(rng, letters, 2));
    if (!fsa.matches_empty() && fsa.state_count() <= max_states) return fsa;
  }
}

}  // namespace

TEST_CASE("saturated edges and counting information match brute force") {
  testkit::Rng rng(51);
  for (int i = 0; i < 100; ++i) {
    const Slp slp = testkit::random_slp(rng, "ab\n", 30, 48, 6);
    const Fsa fsa = small_pattern(rng, "ab", 10);
    EngineOptions options;
    options.check_invariants = true;
    Engine engine(fsa, options);
    for (const Rule& r : slp.rules) engine.process_rule(r);
    for (SymbolId x = 0; x < engine.symbol_count(); ++x) {
      if (x < kFirstVariable && x != 'a' && x != 'b' && x != '\n') continue;
      const std::string u = expand_symbol(slp, x);
      const auto& e = engine.entry(x);
      REQUIRE(std::set<StatePair>(e.edges.begin(), e.edges.end()) ==
              testkit::brute_force_edges(engine.fsa(), u));
      REQUIRE(e.info == testkit::definitional_info(fsa, u));
    }
  }
}

TEST_CASE("axiom fold equals the explicit rule chain") {
  testkit::Rng rng(52);
  for (int i = 0; i < 300; ++i) {
    const Slp slp = testkit::random_slp(rng, "ab\n", 20, 64, 12);
    const Fsa fsa = small_pattern(rng, "ab", 12);
    Engine fold(fsa);
    for (const Rule& r : slp.rules) fold.process_rule(r);
    const CountInfo folded = fold.process_axiom(slp.axiom);

    const Slp chain = testkit::chain_grammar(slp);
    Engine explicit_chain(fsa);
    for (const Rule& r : chain.rules) explicit_chain.process_rule(r);
    REQUIRE(folded == explicit_chain.entry(chain.axiom[0]).info);
    REQUIRE(fold.axiom_contains_match(slp.axiom) == (matching_lines(folded) > 0));
  }
}

TEST_CASE("count and report agree with the oracle") {
  testkit::Rng rng(53);
  const std::string printable = testkit::printable_ascii_with_newline();
  for (int i = 0; i < 200; ++i) {
    const bool small = i % 2 == 0;
    std::string text = testkit::random_text(rng, small ? "ab\n" : printable, 600);
    if (text.empty()) text = "\n";
    const std::string pattern = testkit::random_pattern(rng, small ? "ab" : "abcde ,.");
    const Slp slp = compress(text);
    const Fsa fsa = compile(pattern);
    const auto lines = oracle::oracle_lines(text, pattern);
    REQUIRE(count_matching_lines(slp, fsa) == lines.size());
    REQUIRE(contains_match(slp, fsa) == !lines.empty());
    std::string expected;
    for (const auto& l : lines) expected += l + "\n";
    std::ostringstream pruned, full;
    report_matching_lines(slp, fsa, pruned, {true});
    report_matching_lines(slp, fsa, full, {false});
    REQUIRE(pruned.str() == expected);
    REQUIRE(full.str() == expected);
  }
}

TEST_CASE("hand-built automata with loops on initial and final states") {
  // 0(I) -a-> 0, 0 -b-> 1(F), 1 -a-> 1, 1 -b-> 2
  const std::vector<Transition> t{{0, 'a', 0}, {0, 'b', 1}, {1, 'a', 1}, {1, 'b', 2}};
  const Fsa fsa(3, {0}, {1}, t, false);
  testkit::Rng rng(54);
  for (int i = 0; i < 300; ++i) {
    std::string text = testkit::random_text(rng, "abc\n", 200);
    if (text.empty()) text = "c";
    std::uint64_t expected = 0;
    for (auto line : oracle::split_lines(text)) expected += oracle::line_matches(fsa, line);
    const Slp slp = compress(text);
    REQUIRE(count_matching_lines(slp, fsa) == expected);
    std::ostringstream out;
    REQUIRE(report_matching_lines(slp, fsa, out).lines == expected);
  }
}
