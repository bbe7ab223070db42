#pragma once

#include <stdexcept>
#include <string>

namespace logeuler {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NonpositiveDensity : public Error {
 public:
  explicit NonpositiveDensity(double rho)
      : Error("density must be positive, got " + std::to_string(rho)), rho(rho) {}
  double rho;
};

class NonpositiveSoundSpeed : public Error {
 public:
  explicit NonpositiveSoundSpeed(double dp)
      : Error("squared sound speed must be positive, got " + std::to_string(dp)), dp(dp) {}
  double dp;
};

class ZeroCurvature : public Error {
 public:
  explicit ZeroCurvature(double rho)
      : Error("pressure curvature vanishes at rho = " + std::to_string(rho)), rho(rho) {}
  double rho;
};

class AssumptionViolation : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  explicit GridTooSmall(std::size_t n)
      : Error("grid needs at least 8 cells, got " + std::to_string(n)) {}
};

class BlowupDetected : public Error {
 public:
  BlowupDetected(double t, double grad)
      : Error("gradient blowup detected at t = " + std::to_string(t) +
              " (max gradient " + std::to_string(grad) + ")"),
        t(t),
        grad(grad) {}
  double t;
  double grad;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class SuperluminalState : public Error {
 public:
  SuperluminalState(double v_squared, double c)
      : Error("|v|^2 = " + std::to_string(v_squared) + " exceeds c^2 = " +
              std::to_string(c * c)) {}
};

class RootNotBracketed : public Error {
 public:
  using Error::Error;
};

class InvalidSymState : public Error {
 public:
  using Error::Error;
};

class RecoveryFailure : public Error {
 public:
  RecoveryFailure(const std::string& what, double D, double S)
      : Error(what + " (D = " + std::to_string(D) + ", S = " + std::to_string(S) + ")"),
        D(D),
        S(S) {}
  double D;
  double S;
};

class InadmissibleTarget : public Error {
 public:
  using Error::Error;
};

}  // namespace logeuler
