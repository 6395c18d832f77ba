#pragma once

#include <stdexcept>
#include <string>

namespace planks {

/// Thrown when an input violates a documented precondition: dimension
/// mismatch, identically-zero polynomial, infeasible width budget, etc.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot produce a result, e.g. every
/// optimizer start collapsed onto the zero set.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace planks
