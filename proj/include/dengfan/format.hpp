#pragma once

#include <cstdio>
#include <string>

namespace dengfan {

/// Fixed 10-significant-digit formatting (the precision the reference
/// tables carry); identical input always yields identical bytes.
inline std::string format_sig10(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace dengfan
