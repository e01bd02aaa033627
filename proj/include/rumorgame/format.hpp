#pragma once

#include <string>

namespace rumorgame {

// All exported floating-point values use 9 significant digits.
std::string format_sig9(double x);

// x rounded to the value format_sig9(x) parses back to.
double round_sig9(double x);

}  // namespace rumorgame
