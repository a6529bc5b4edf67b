#pragma once

#include <cstdio>
#include <string>

namespace gsamp {

/// Decimal text that round-trips IEEE doubles exactly; used by every file
/// writer so outputs are reproducible byte for byte.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

}  // namespace gsamp
