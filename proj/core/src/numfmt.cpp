#include "scsamp/numfmt.hpp"

#include <cstdio>

namespace scsamp {

std::string format_number(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace scsamp
