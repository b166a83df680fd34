#pragma once

#include <stdexcept>

namespace renorm {

// Raised when input data is well-formed but mathematically inconsistent
// (invalid tower, broken window postcondition, insufficient refinement).
// Malformed arguments and violated preconditions use std::invalid_argument.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace renorm
