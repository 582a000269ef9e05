#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

namespace folksonet {

// Fixed-precision double formatting for report files. snprintf keeps the
// output identical across standard-library versions; NaN prints as "nan".
inline std::string format_double(double value, int decimals = 6) {
  if (std::isnan(value)) return "nan";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

// RFC 4180 style field quoting, applied only when needed.
inline std::string csv_field(std::string_view value) {
  const bool needs_quotes = value.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(value);
  std::string quoted = "\"";
  for (const char c : value) {
    if (c == '"') quoted += "\"\"";
    else quoted.push_back(c);
  }
  quoted.push_back('"');
  return quoted;
}

}  // namespace folksonet
