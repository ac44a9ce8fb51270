#pragma once

#include <stdexcept>
#include <string>

namespace cvent {

// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure failed on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series or iteration did not converge; carries the partial result.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double partial_sum, long terms)
      : NumericalError(what), partial_sum_(partial_sum), terms_(terms) {}
  double partial_sum() const noexcept { return partial_sum_; }
  long terms() const noexcept { return terms_; }

 private:
  double partial_sum_;
  long terms_;
};

// Fock truncation too small for the requested accuracy.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double deficit, int n_max)
      : NumericalError(what), deficit_(deficit), n_max_(n_max) {}
  double deficit() const noexcept { return deficit_; }
  int n_max() const noexcept { return n_max_; }

 private:
  double deficit_;
  int n_max_;
};

// Decomposition requested along a (nearly) pure symplectic direction.
class IllConditionedError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Every start of a constrained search was infeasible.
class NoFeasiblePointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Phase-space grid does not resolve the sampled function.
class ResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Requested target value is not attained on the admissible interval.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

}  // namespace cvent
