#pragma once

#include <cstdint>
#include <istream>
#include <vector>

namespace slpgrep::varint {

// LEB128: seven payload bits per byte, high bit set on every byte but the last.
inline void append(std::vector<std::uint8_t>& out, std::uint64_t value) {
  do {
    std::uint8_t byte = value & 0x7F;
    value >>= 7;
    if (value != 0) byte |= 0x80;
    out.push_back(byte);
  } while (value != 0);
}

inline std::size_t encoded_size(std::uint64_t value) {
  std::size_t n = 1;
  while (value >= 0x80) {
    value >>= 7;
    ++n;
  }
  return n;
}

enum class ReadStatus { kOk, kEof, kTruncated, kOverflow };

// Reads one varint. kEof means the stream ended before the first byte;
// kTruncated means it ended inside a varint.
inline ReadStatus read(std::istream& in, std::uint64_t& value) {
  value = 0;
  unsigned shift = 0;
  for (bool first = true;; first = false) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      return first ? ReadStatus::kEof : ReadStatus::kTruncated;
    }
    const auto byte = static_cast<std::uint8_t>(c);
    if (shift == 63 && (byte & 0x7E) != 0) return ReadStatus::kOverflow;
    if (shift > 63) return ReadStatus::kOverflow;
    value |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
    if ((byte & 0x80) == 0) return ReadStatus::kOk;
    shift += 7;
  }
}

}  // namespace slpgrep::varint
