#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace qbag {

// Fixed-point display. Values within 1e-9 (relative to the last digit) of a
// half are rounded away from zero, so 0.0475 stored as 0.04749999... shows as
// 0.048 like the decimal it came from. Never prints "-0.000".
inline std::string format_fixed(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double r = std::fabs(v) * scale;
  double shown = v;
  if (std::fabs(r - std::floor(r) - 0.5) < 1e-9 * std::max(1.0, r)) shown = std::copysign(std::floor(r) + 1.0, v) / scale;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, shown);
  std::string s = buf;
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace qbag
