#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace lciso {

/// Fixed 15-significant-digit rendering used by every CLI/CSV output.
inline std::string fmt15(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace lciso
