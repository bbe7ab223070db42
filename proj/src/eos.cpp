#include "logeuler/eos.hpp"

#include <cmath>
#include <sstream>

namespace logeuler {

namespace {

void require_positive_density(double rho) {
  if (!(rho > 0.0)) throw NonpositiveDensity(rho);
}

bool on_power_branch(const EosSpec& eos) {
  return eos.family != EosFamily::Logarithmic;
}

}  // namespace

std::string_view to_string(EosFamily family) {
  switch (family) {
    case EosFamily::Polytropic: return "polytropic";
    case EosFamily::Chaplygin: return "chaplygin";
    case EosFamily::Logarithmic: return "logarithmic";
    case EosFamily::GeneralPower: return "general_power";
  }
  return "unknown";
}

EosFamily family_from_string(std::string_view name) {
  if (name == "polytropic") return EosFamily::Polytropic;
  if (name == "chaplygin") return EosFamily::Chaplygin;
  if (name == "logarithmic") return EosFamily::Logarithmic;
  if (name == "general_power") return EosFamily::GeneralPower;
  throw ConfigError("unknown EOS family: " + std::string(name));
}

EosSpec EosSpec::polytropic(double A, double K1, double K, double c) {
  EosSpec eos{EosFamily::Polytropic, A, K1, K, c};
  eos.validate();
  return eos;
}

EosSpec EosSpec::chaplygin(double A, double K1, double K, double c) {
  EosSpec eos{EosFamily::Chaplygin, A, K1, K, c};
  eos.validate();
  return eos;
}

EosSpec EosSpec::logarithmic(double K1, double K, double c) {
  EosSpec eos{EosFamily::Logarithmic, -1.0, K1, K, c};
  eos.validate();
  return eos;
}

EosSpec EosSpec::general_power(double A, double K1, double K, double c) {
  EosSpec eos{EosFamily::GeneralPower, A, K1, K, c};
  eos.validate();
  return eos;
}

void EosSpec::validate() const {
  if (!(K1 > 0.0)) throw ConfigError("EOS requires K1 > 0");
  if (!(c > 0.0)) throw ConfigError("EOS requires c > 0");
  if (!std::isfinite(A) || !std::isfinite(K)) throw ConfigError("EOS parameters must be finite");
  switch (family) {
    case EosFamily::Polytropic:
      if (!(A > 0.0)) throw ConfigError("polytropic family requires A > 0");
      break;
    case EosFamily::Chaplygin:
      if (!(A >= -2.0 && A < -1.0))
        throw ConfigError("chaplygin family requires -2 <= A < -1");
      break;
    case EosFamily::Logarithmic:
      break;
    case EosFamily::GeneralPower:
      if (A == -1.0)
        throw ConfigError("general_power with A = -1 is the logarithmic family");
      break;
  }
}

double pressure(const EosSpec& eos, double rho) {
  require_positive_density(rho);
  if (on_power_branch(eos)) return eos.K1 / (eos.A + 1.0) * std::pow(rho, eos.A + 1.0) + eos.K;
  return eos.K1 * std::log(rho) + eos.K;
}

double dp_drho(const EosSpec& eos, double rho) {
  require_positive_density(rho);
  if (on_power_branch(eos)) return eos.K1 * std::pow(rho, eos.A);
  return eos.K1 / rho;
}

double d2p_drho2(const EosSpec& eos, double rho) {
  require_positive_density(rho);
  if (on_power_branch(eos)) return eos.K1 * eos.A * std::pow(rho, eos.A - 1.0);
  return -eos.K1 / (rho * rho);
}

double sound_speed(const EosSpec& eos, double rho) {
  const double dp = dp_drho(eos, rho);
  if (!(dp > 0.0)) throw NonpositiveSoundSpeed(dp);
  return std::sqrt(dp);
}

double enthalpy_density(const EosSpec& eos, double rho) {
  return rho * eos.c * eos.c + pressure(eos, rho);
}

double ode_residual(const EosSpec& eos, double rho) {
  const double curvature = d2p_drho2(eos, rho);
  if (curvature == 0.0) throw ZeroCurvature(rho);
  return eos.A * dp_drho(eos, rho) / curvature - rho;
}

bool subluminal_check(const EosSpec& eos, double rho) {
  const double dp = dp_drho(eos, rho);
  return dp > 0.0 && dp <= eos.c * eos.c;
}

void AdmissibleWindow::validate() const {
  if (!(rho_star > 0.0)) throw ConfigError("admissible window requires rho_star > 0");
  if (!(delta > 0.0)) throw ConfigError("admissible window requires delta > 0");
  if (!(rho_max > rho_star + delta))
    throw ConfigError("admissible window requires rho_max > rho_star + delta");
}

AdmissibleWindow lemma1_bounds(const EosSpec& eos, double rho_max_factor,
                               double delta_factor) {
  if (!eos.is_logarithmic())
    throw AssumptionViolation("density lower bound is derived for the logarithmic law only");
  const double c2 = eos.c * eos.c;
  const double gate = c2 / std::exp(1.0);
  if (!(eos.K1 > gate)) {
    std::ostringstream msg;
    msg << "logarithmic coefficient too small: need K1 > c^2/e = " << gate
        << ", got K1 = " << eos.K1;
    throw AssumptionViolation(msg.str());
  }
  AdmissibleWindow window;
  window.rho_star = eos.K1 / c2;
  window.rho_max = rho_max_factor * window.rho_star;
  window.delta = delta_factor * window.rho_star;
  window.validate();

  // rho c^2 + p is increasing in rho, so positivity at rho_star certifies
  // positivity on the whole window.
  const double base = enthalpy_density(eos, window.rho_star);
  if (!(base > 0.0)) {
    std::ostringstream msg;
    msg << "rho c^2 + p = " << base << " at rho_star = " << window.rho_star
        << " is not positive";
    throw AssumptionViolation(msg.str());
  }
  return window;
}

}  // namespace logeuler
