#pragma once

#include <istream>
#include <ostream>

namespace slpgrep {

// Entry point of the slpgrep tool. Returns 0 on success or when some line
// matched, 1 when count/search found nothing, 2 on any error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace slpgrep
