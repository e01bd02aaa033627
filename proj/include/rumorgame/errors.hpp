#pragma once

#include <stdexcept>
#include <string>

namespace rumorgame {

// Argument outside the mathematical domain of an operation (x outside [0,1],
// non-positive emotion index, malformed lottery, payoff ordering violated).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation produced a non-finite value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rumorgame
