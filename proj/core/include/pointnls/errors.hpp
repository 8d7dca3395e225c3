#pragma once

#include <stdexcept>
#include <string>

namespace pointnls {

/// Argument outside the mathematical domain of an operation (t >= T*, lambda <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation is not defined for the requested exponent or configuration.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The grid cannot resolve what was asked of it (oscillatory quadrature, sub-cell windows).
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Gagliardo-Nirenberg quotient is undefined because the center value vanishes.
class ZeroCenterValue : public std::domain_error {
 public:
  ZeroCenterValue() : std::domain_error("functional undefined: u(0) = 0") {}
};

/// Crank-Nicolson step failed even after repeated time-step halving.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Picard iteration for the implicit Volterra self-term did not converge.
class PicardFailure : public std::runtime_error {
 public:
  PicardFailure(const std::string& what, double time, double residual)
      : std::runtime_error(what), time_(time), residual_(residual) {}
  double time() const noexcept { return time_; }
  double residual() const noexcept { return residual_; }

 private:
  double time_;
  double residual_;
};

/// Invalid scenario or command-line configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pointnls
