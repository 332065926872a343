#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slpgrep {

// Base class for every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed ZSLP stream.
class FormatError : public Error {
 public:
  enum class Kind {
    kBadMagic,
    kUnsupportedVersion,
    kTruncated,
    kBadVarint,
    kInvariantViolation,
    kTrailingData,
  };

  FormatError(Kind kind, const std::string& detail);

  Kind kind() const { return kind_; }

  static const char* kind_name(Kind kind);

 private:
  Kind kind_;
};

// A grammar that breaks the SLP invariants (see validate_slp).
class InvalidSlpError : public Error {
 public:
  using Error::Error;
};

// Regular expression rejected by the compiler.
class PatternError : public Error {
 public:
  enum class Kind { kSyntax, kNewline };

  PatternError(Kind kind, std::size_t position, const std::string& reason);

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

// Failure while writing to an output sink.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace slpgrep
