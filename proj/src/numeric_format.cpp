#include "qso/numeric_format.hpp"

#include <cstdio>

namespace qso {

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace qso
