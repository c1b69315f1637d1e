#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

namespace opsim {

/// Shortest decimal representation that parses back to the same double.
/// Non-finite values render as inf/-inf/nan.
inline std::string format_double(double value) {
  if (value != value) return "nan";
  if (value == __builtin_inf()) return "inf";
  if (value == -__builtin_inf()) return "-inf";
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace opsim
