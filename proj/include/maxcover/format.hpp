#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace maxcover {

/// Fixed six-decimal rendering used by every text output. Values that round
/// to zero print as "0.000000", never "-0.000000".
inline std::string fixed6(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace maxcover
