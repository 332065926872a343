#include "slpgrep/error.hpp"

namespace slpgrep {

FormatError::FormatError(Kind kind, const std::string& detail)
    : Error(std::string(kind_name(kind)) + (detail.empty() ? "" : ": " + detail)),
      kind_(kind) {}

const char* FormatError::kind_name(Kind kind) {
  switch (kind) {
    case Kind::kBadMagic:
      return "bad magic";
    case Kind::kUnsupportedVersion:
      return "unsupported version";
    case Kind::kTruncated:
      return "truncated stream";
    case Kind::kBadVarint:
      return "bad varint";
    case Kind::kInvariantViolation:
      return "invariant violation";
    case Kind::kTrailingData:
      return "trailing data";
  }
  return "format error";
}

namespace {

std::string pattern_message(PatternError::Kind kind, std::size_t position,
                            const std::string& reason) {
  if (kind == PatternError::Kind::kNewline) return "newline in pattern";
  return "syntax error at position " + std::to_string(position) + ": " + reason;
}

}  // namespace

PatternError::PatternError(Kind kind, std::size_t position, const std::string& reason)
    : Error(pattern_message(kind, position, reason)), kind_(kind), position_(position) {}

}  // namespace slpgrep
