#pragma once

#include <stdexcept>
#include <string>

namespace dispersion {

// Base of every exception thrown by the library. The CLI maps this family
// onto the "physics-domain error" exit status.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An ideal-limit marker reached an operation that needs epsilon/mu values.
class UnsupportedModel : public DomainError {
 public:
  using DomainError::DomainError;
};

// Ideal marker in a non-terminal layer, missing semi-infinite terminator, ...
class InvalidStack : public DomainError {
 public:
  using DomainError::DomainError;
};

// xi = q = 0, rho = 0, coincident atoms.
class DegeneratePoint : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public DomainError {
 public:
  ConvergenceError(const std::string& what, double residual)
      : DomainError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace dispersion
