#include "rumorgame/format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace rumorgame {

std::string format_sig9(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

double round_sig9(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_sig9(x).c_str(), nullptr);
}

}  // namespace rumorgame
