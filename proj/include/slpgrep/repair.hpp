#pragma once

#include <cstdint>
#include <string_view>

#include "slpgrep/slp.hpp"

namespace slpgrep {

// RePair: repeatedly replaces the most frequent adjacent pair (counted
// without overlaps, left to right) by a fresh variable until no pair occurs
// twice. Ties go to the pair whose first occurrence is leftmost. The residual
// sequence becomes the axiom. Throws Error on empty input.
Slp compress(std::string_view text);

struct CompressionReport {
  std::size_t rules = 0;
  std::size_t axiom_len = 0;
  std::size_t encoded_bytes = 0;
  double ratio = 0.0;  // original_len / encoded_bytes
};

CompressionReport compression_report(const Slp& slp, std::size_t original_len);

}  // namespace slpgrep
