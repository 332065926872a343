#include <doctest.h>

#include <map>

#include "slpgrep/error.hpp"
#include "slpgrep/repair.hpp"
#include "slpgrep/slp.hpp"
#include "testkit.hpp"

using namespace slpgrep;

TEST_CASE("compress examples") {
  const Slp a = compress("abab");
  CHECK(a.rules == std::vector<Rule>{{256, 'a', 'b'}});
  CHECK(a.axiom == std::vector<SymbolId>{256, 256});

  const Slp b = compress("abc");
  CHECK(b.rules.empty());
  CHECK(b.axiom == std::vector<SymbolId>{'a', 'b', 'c'});

  const Slp c = compress("abcabc");
  CHECK(c.rules == std::vector<Rule>{{256, 'a', 'b'}, {257, 256, 'c'}});
  CHECK(c.axiom == std::vector<SymbolId>{257, 257});

  const Slp d = compress("aaaa");
  CHECK(d.rules == std::vector<Rule>{{256, 'a', 'a'}});
  CHECK(d.axiom == std::vector<SymbolId>{256, 256});
}

TEST_CASE("odd runs count without overlap") {
  const Slp s = compress("aaa");
  CHECK(s.rules.empty());
  CHECK(expand(compress("aaaaa")) == "aaaaa");
}

TEST_CASE("compress rejects empty input") { CHECK_THROWS_AS(compress(""), Error); }

TEST_CASE("compression_report") {
  const auto r = compression_report(compress("abab"), 4);
  CHECK(r.rules == 1);
  CHECK(r.axiom_len == 2);
  CHECK(r.encoded_bytes == 13);
  const auto r2 = compression_report(compress("abc"), 3);
  CHECK(r2.rules == 0);
  CHECK(r2.axiom_len == 3);
  CHECK(r2.ratio < 1.0);
}

TEST_CASE("compress agrees with the rescan implementation") {
  testkit::Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    std::string text = (i % 2 == 0) ? testkit::random_text(rng, "ab\n", 300)
                                    : testkit::random_binary(rng, 300);
    if (text.empty()) text = "x";
    const Slp fast = compress(text);
    const Slp slow = testkit::naive_repair(text);
    REQUIRE(fast.rules == slow.rules);
    REQUIRE(fast.axiom == slow.axiom);
  }
}

TEST_CASE("compress output is a valid, maximal grammar") {
  testkit::Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    std::string text = testkit::random_binary(rng, 2000);
    if (text.empty()) continue;
    const Slp slp = compress(text);
    CHECK(validate_slp(slp).empty());
    CHECK(expand(slp) == text);
    std::map<std::pair<SymbolId, SymbolId>, std::size_t> last;
    bool repeated = false;
    for (std::size_t k = 0; k + 1 < slp.axiom.size(); ++k) {
      const auto key = std::make_pair(slp.axiom[k], slp.axiom[k + 1]);
      auto [it, fresh] = last.try_emplace(key, k);
      if (!fresh && it->second + 2 <= k) repeated = true;
    }
    CHECK_FALSE(repeated);
    CHECK(compress(text).rules == slp.rules);
  }
}
