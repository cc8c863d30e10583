#pragma once

#include <stdexcept>
#include <string>

namespace beambounds {

// Configuration-level failures (exit code 1 in the CLI).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MisalignedMesh : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedProfile : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class StaleResult : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures (exit code 2 in the CLI).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A or B is not numerically positive definite.
class FactorizationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  NoConvergence(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace beambounds
