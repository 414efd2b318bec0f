#pragma once

#include <stdexcept>
#include <string>

namespace trionsim {

/// Bad input: wrong shape, out-of-range index, non-Hermitian where Hermitian is required.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of a numerical method on otherwise valid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The Liouvillian kernel is not one-dimensional.
class DegenerateSteadyStateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double reached_time)
      : NumericalError(what), reached_time_(reached_time) {}
  double reached_time() const noexcept { return reached_time_; }

 private:
  double reached_time_;
};

/// A correlation was requested for a channel that emits no photons.
class NormalizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSplittingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FitError : public NumericalError {
 public:
  FitError(const std::string& what, double best_k, double best_residual)
      : NumericalError(what), best_k_(best_k), best_residual_(best_residual) {}
  double best_k() const noexcept { return best_k_; }
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_k_;
  double best_residual_;
};

}  // namespace trionsim
