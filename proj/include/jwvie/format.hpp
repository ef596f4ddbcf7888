#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace jwvie {

/// Fixed "%.6e" rendering used by every CSV writer so output is byte-stable.
inline std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", value);
  return buf;
}

}  // namespace jwvie
