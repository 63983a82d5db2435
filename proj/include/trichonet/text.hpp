#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace trichonet {

// All floating-point output is printed with 9 significant digits so that
// emitted files diff stably across runs.
inline std::string format_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Round-trips a value through its 9-digit representation (for JSON fields
// that should match the printed CSV form).
inline double round_g9(double v) {
  return std::strtod(format_g9(v).c_str(), nullptr);
}

}  // namespace trichonet
