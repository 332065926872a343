#include <doctest.h>

#include <sstream>

#include "slpgrep/error.hpp"
#include "slpgrep/regex.hpp"
#include "slpgrep/repair.hpp"
#include "slpgrep/reporter.hpp"
#include "testkit.hpp"

using namespace slpgrep;

namespace {

std::string report(const Slp& slp, std::string_view pattern, bool prune = true,
                   ReportResult* result = nullptr) {
  std::ostringstream out;
  const ReportResult r = report_matching_lines(slp, compile(pattern), out, {prune});
  if (result != nullptr) *result = r;
  return out.str();
}

}  // namespace

TEST_CASE("three-line fixture lines") {
  ReportResult r;
  CHECK(report(testkit::three_line_slp(), "ab|ba", true, &r) == "ba\nab\naba\n");
  CHECK(r.lines == 3);
}

TEST_CASE("no match emits nothing") {
  ReportResult r;
  CHECK(report(compress("xxx"), "zz", true, &r).empty());
  CHECK(r.lines == 0);
}

TEST_CASE("empty-accepting patterns emit every line") {
  CHECK(report(compress("a\n\nb"), "x*") == "a\n\nb\n");
}

TEST_CASE("pruning skips non-matching subtrees") {
  std::string text;
  for (int i = 0; i < 200; ++i) text += "lorem ipsum dolor\n";
  text += "needle here\n";
  for (int i = 0; i < 200; ++i) text += "lorem ipsum dolor\n";
  const Slp slp = compress(text);
  ReportResult pruned;
  ReportResult full;
  CHECK(report(slp, "needle", true, &pruned) == "needle here\n");
  CHECK(report(slp, "needle", false, &full) == "needle here\n");
  CHECK(pruned.pruned_subtrees > 0);
  CHECK(pruned.bytes_visited < full.bytes_visited / 4);
  CHECK(full.bytes_visited == text.size());
}

TEST_CASE("a failing sink is reported") {
  std::ostringstream out;
  out.setstate(std::ios::badbit);
  CHECK_THROWS_AS(report_matching_lines(compress("ab\nab"), compile("a"), out), IoError);
}
