#pragma once

#include <string>
#include <string_view>

#include "logeuler/errors.hpp"

namespace logeuler {

enum class EosFamily { Polytropic, Chaplygin, Logarithmic, GeneralPower };

std::string_view to_string(EosFamily family);
EosFamily family_from_string(std::string_view name);

/// Barotropic pressure law from the one-parameter family solving
/// A p'(rho) / p''(rho) = rho, i.e. p'(rho) = K1 rho^A:
///
///   p(rho) = K1 rho^(A+1) / (A+1) + K   (power branch, A != -1)
///   p(rho) = K1 ln(rho) + K             (logarithmic branch, A = -1)
///
/// The Logarithmic family always evaluates the logarithmic branch; its A
/// field is only the ODE parameter used by ode_residual, so the misbranching
/// value A = +1 can be constructed and shown to fail the family residual.
struct EosSpec {
  EosFamily family = EosFamily::Logarithmic;
  double A = -1.0;  ///< ODE exponent: p'(rho) = K1 rho^A
  double K1 = 1.0;  ///< pressure scale, > 0
  double K = 0.0;   ///< additive pressure constant
  double c = 1.0;   ///< light speed, > 0

  static EosSpec polytropic(double A, double K1 = 1.0, double K = 0.0, double c = 1.0);
  static EosSpec chaplygin(double A, double K1 = 1.0, double K = 0.0, double c = 1.0);
  static EosSpec logarithmic(double K1 = 1.0, double K = 0.0, double c = 1.0);
  static EosSpec general_power(double A, double K1 = 1.0, double K = 0.0, double c = 1.0);

  bool is_logarithmic() const { return family == EosFamily::Logarithmic; }

  /// Throws ConfigError when the parameters violate the family invariants.
  void validate() const;
};

double pressure(const EosSpec& eos, double rho);
double dp_drho(const EosSpec& eos, double rho);
double d2p_drho2(const EosSpec& eos, double rho);

/// sqrt(p'(rho)), the sound speed.
double sound_speed(const EosSpec& eos, double rho);

/// rho c^2 + p(rho).
double enthalpy_density(const EosSpec& eos, double rho);

/// A p'(rho)/p''(rho) - rho with the family's stored ODE parameter A.
/// Vanishes identically for members of the family; the deviation is the
/// machine-checkable membership certificate.
double ode_residual(const EosSpec& eos, double rho);

/// True iff 0 < p'(rho) <= c^2.
bool subluminal_check(const EosSpec& eos, double rho);

/// Density window on which the relativistic machinery operates.
struct AdmissibleWindow {
  double rho_star = 1.0;  ///< uniform lower density bound
  double rho_max = 1e3;   ///< configured upper sampling bound
  double delta = 1e-6;    ///< margin, > 0 (density units)

  double rho_min() const { return rho_star + delta; }
  /// Dimensionless velocity margin: |v|^2 <= (1 - margin) c^2.
  double velocity_margin() const { return delta / rho_star; }

  void validate() const;
};

/// For the logarithmic law p = K1 ln(rho) + K, the sound-speed bound
/// p' <= c^2 forces rho >= rho_star = K1 / c^2, and K1 > c^2/e guarantees
/// rho c^2 + p > 0 on [rho_star, inf). Returns the window with
/// rho_max = rho_max_factor * rho_star and delta = delta_factor * rho_star;
/// throws AssumptionViolation when the coefficient gate fails or when
/// rho c^2 + p is not positive at rho_star.
AdmissibleWindow lemma1_bounds(const EosSpec& eos, double rho_max_factor = 1e3,
                               double delta_factor = 1e-6);

}  // namespace logeuler
