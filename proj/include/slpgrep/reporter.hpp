#pragma once

#include <cstdint>
#include <ostream>

#include "slpgrep/fsa.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep {

struct ReportOptions {
  // Skip subtrees that cannot contribute to a matching line. Turning this
  // off decompresses everything; the output must not change.
  bool prune = true;
};

struct ReportResult {
  std::uint64_t lines = 0;          // matching lines written
  std::uint64_t pruned_subtrees = 0;
  std::uint64_t bytes_visited = 0;  // terminals materialised
};

// Writes every matching line of expand(slp), in order, each followed by '\n'
// (also the last one when the text lacks a trailing newline). Runs a
// counting pass first and then walks the grammar top-down, decompressing only
// what a matching line may need. Throws IoError if the sink fails.
ReportResult report_matching_lines(const Slp& slp, const Fsa& fsa, std::ostream& sink,
                                   ReportOptions options = {});

}  // namespace slpgrep
