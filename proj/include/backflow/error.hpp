#pragma once

#include <stdexcept>
#include <string>

namespace backflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of operands do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument lies outside the domain of the operation (negative scalar,
// mu outside (0,1), matrix that is not Hermitian / not a state, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Iterative numerical routine failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace backflow
