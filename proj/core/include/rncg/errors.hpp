#pragma once

#include <stdexcept>
#include <string>

namespace rncg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (a <= 0, g on
/// the wrong side of the critical point, x outside the support, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data: non-Hermitian matrix, unnormalized grid, N < 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalue configuration with coincident entries; the joint density
/// vanishes there and the log-Vandermonde term is undefined.
class DegenerateConfigurationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Resolvent requested within 1e-12 of its branch cut without a side.
class BranchAmbiguityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iterative solver failed to reach its tolerance.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace rncg
