#pragma once

#include <stdexcept>
#include <string>

namespace jwvie {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure produced a non-finite value or failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear solve failure (singular or ill-conditioned system).
class SolverError : public NumericError {
 public:
  SolverError(const std::string& what, double rcond)
      : NumericError(what), rcond_(rcond) {}

  /// Reciprocal 1-norm condition estimate at the time of failure.
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

}  // namespace jwvie
