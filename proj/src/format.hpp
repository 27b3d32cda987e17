#pragma once

#include <array>
#include <charconv>
#include <string>

namespace spotplan::detail {

// Shortest text that parses back to the same double.
inline std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

// Six significant digits, for human-facing tables.
inline std::string format_sig6(double value) {
  std::array<char, 32> buf{};
  auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 6);
  return std::string(buf.data(), end);
}

}  // namespace spotplan::detail
