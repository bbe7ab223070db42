#include "logeuler/classical.hpp"

#include <algorithm>
#include <cmath>

namespace logeuler {

PressureLaw PressureLaw::from_eos(const EosSpec& eos) {
  return PressureLaw{
      [eos](double rho) { return pressure(eos, rho); },
      [eos](double rho) { return dp_drho(eos, rho); },
      [eos](double rho) { return d2p_drho2(eos, rho); },
  };
}

PressureLaw PressureLaw::cubic_outside_family() {
  return PressureLaw{
      [](double rho) { return rho + rho * rho * rho; },
      [](double rho) { return 1.0 + 3.0 * rho * rho; },
      [](double rho) { return 6.0 * rho; },
  };
}

void SymmetryParams::validate() const {
  if (A == 0.0) throw ConfigError("symmetry coupling constant A must be nonzero");
  if (!std::isfinite(A) || !std::isfinite(B))
    throw ConfigError("symmetry constants must be finite");
}

double v_of_rho(const PressureLaw& law, const SymmetryParams& params, double rho) {
  params.validate();
  if (!(rho > 0.0)) throw NonpositiveDensity(rho);
  const double dp = law.dp(rho);
  if (!(dp > 0.0)) throw NonpositiveSoundSpeed(dp);
  return 2.0 / params.A * (std::sqrt(dp) - params.B);
}

double v_of_rho(const EosSpec& eos, const SymmetryParams& params, double rho) {
  return v_of_rho(PressureLaw::from_eos(eos), params, rho);
}

double dv_drho(const PressureLaw& law, const SymmetryParams& params, double rho) {
  params.validate();
  if (!(rho > 0.0)) throw NonpositiveDensity(rho);
  const double dp = law.dp(rho);
  if (!(dp > 0.0)) throw NonpositiveSoundSpeed(dp);
  return law.d2p(rho) / (params.A * std::sqrt(dp));
}

double rho_of_v(const EosSpec& eos, const SymmetryParams& params, double v) {
  params.validate();
  const double root = params.B + 0.5 * params.A * v;  // sqrt(p'(rho))
  if (!(root > 0.0))
    throw OutOfRange("B + (A/2) v = " + std::to_string(root) + " must be positive");
  const double dp = root * root;
  if (eos.is_logarithmic()) return eos.K1 / dp;  // p' = K1 / rho
  return std::pow(dp / eos.K1, 1.0 / eos.A);     // p' = K1 rho^A
}

void ClassicalField1D::validate() const {
  if (rho.size() != u.size())
    throw ConfigError("field arrays must have equal length");
  if (rho.size() < 8) throw GridTooSmall(rho.size());
  if (!(dx > 0.0)) throw ConfigError("field requires dx > 0");
  for (double r : rho)
    if (!(r > 0.0)) throw NonpositiveDensity(r);
}

std::vector<double> central_derivative4(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  if (n < 8) throw GridTooSmall(n);
  std::vector<double> out(n);
  const double inv = 1.0 / (12.0 * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m2 = (i + n - 2) % n;
    const std::size_t m1 = (i + n - 1) % n;
    const std::size_t p1 = (i + 1) % n;
    const std::size_t p2 = (i + 2) % n;
    // differences first, so constant data yields an exact zero
    out[i] = (8.0 * (f[p1] - f[m1]) - (f[p2] - f[m2])) * inv;
  }
  return out;
}

ResidualPair residual_classical(const ClassicalField1D& field,
                                std::span<const double> rho_t,
                                std::span<const double> u_t,
                                const PressureLaw& law) {
  field.validate();
  const std::size_t n = field.size();
  if (rho_t.size() != n || u_t.size() != n)
    throw ConfigError("time-derivative arrays must match the field length");

  std::vector<double> mass_flux(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    mass_flux[i] = field.rho[i] * field.u[i];
    p[i] = law.p(field.rho[i]);
  }
  const auto d_mass_flux = central_derivative4(mass_flux, field.dx);
  const auto du = central_derivative4(field.u, field.dx);
  const auto dp = central_derivative4(p, field.dx);

  ResidualPair res;
  res.first.resize(n);
  res.second.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    res.first[i] = rho_t[i] + d_mass_flux[i];
    res.second[i] = field.rho[i] * (u_t[i] + field.u[i] * du[i]) + dp[i];
  }
  return res;
}

ResidualPair residual_symmetric(const SymmetricField1D& field,
                                std::span<const double> v_t,
                                std::span<const double> u_t,
                                const SymmetryParams& params) {
  params.validate();
  const std::size_t n = field.size();
  if (field.u.size() != n) throw ConfigError("field arrays must have equal length");
  if (n < 8) throw GridTooSmall(n);
  if (v_t.size() != n || u_t.size() != n)
    throw ConfigError("time-derivative arrays must match the field length");

  const auto dv = central_derivative4(field.v, field.dx);
  const auto du = central_derivative4(field.u, field.dx);

  ResidualPair res;
  res.first.resize(n);
  res.second.resize(n);
  const double half_A = 0.5 * params.A;
  for (std::size_t i = 0; i < n; ++i) {
    res.first[i] = v_t[i] + params.B * du[i] + field.u[i] * dv[i] +
                   half_A * field.v[i] * du[i];
    res.second[i] = u_t[i] + params.B * dv[i] + field.u[i] * du[i] +
                    half_A * field.v[i] * dv[i];
  }
  return res;
}

namespace {

// Right-hand sides for the method-of-lines integrators.
void classical_rhs(const std::vector<double>& rho, const std::vector<double>& u,
                   double dx, const PressureLaw& law, std::vector<double>& rho_t,
                   std::vector<double>& u_t) {
  const std::size_t n = rho.size();
  std::vector<double> mass_flux(n);
  for (std::size_t i = 0; i < n; ++i) mass_flux[i] = rho[i] * u[i];
  const auto d_mass_flux = central_derivative4(mass_flux, dx);
  const auto du = central_derivative4(u, dx);
  const auto drho = central_derivative4(rho, dx);
  rho_t.resize(n);
  u_t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0)) throw NonpositiveDensity(rho[i]);
    rho_t[i] = -d_mass_flux[i];
    u_t[i] = -u[i] * du[i] - law.dp(rho[i]) / rho[i] * drho[i];
  }
}

void symmetric_rhs(const std::vector<double>& v, const std::vector<double>& u,
                   double dx, const SymmetryParams& params, std::vector<double>& v_t,
                   std::vector<double>& u_t) {
  const std::size_t n = v.size();
  const auto dv = central_derivative4(v, dx);
  const auto du = central_derivative4(u, dx);
  v_t.resize(n);
  u_t.resize(n);
  const double half_A = 0.5 * params.A;
  for (std::size_t i = 0; i < n; ++i) {
    v_t[i] = -params.B * du[i] - u[i] * dv[i] - half_A * v[i] * du[i];
    u_t[i] = -params.B * dv[i] - u[i] * du[i] - half_A * v[i] * dv[i];
  }
}

// One classic RK4 step of y' = f(y) for a pair of arrays.
template <class Rhs>
void rk4_step(std::vector<double>& a, std::vector<double>& b, double dx, double dt,
              const Rhs& rhs) {
  const std::size_t n = a.size();
  std::vector<double> k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
  std::vector<double> ta(n), tb(n);

  rhs(a, b, dx, k1a, k1b);
  for (std::size_t i = 0; i < n; ++i) {
    ta[i] = a[i] + 0.5 * dt * k1a[i];
    tb[i] = b[i] + 0.5 * dt * k1b[i];
  }
  rhs(ta, tb, dx, k2a, k2b);
  for (std::size_t i = 0; i < n; ++i) {
    ta[i] = a[i] + 0.5 * dt * k2a[i];
    tb[i] = b[i] + 0.5 * dt * k2b[i];
  }
  rhs(ta, tb, dx, k3a, k3b);
  for (std::size_t i = 0; i < n; ++i) {
    ta[i] = a[i] + dt * k3a[i];
    tb[i] = b[i] + dt * k3b[i];
  }
  rhs(ta, tb, dx, k4a, k4b);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] += dt / 6.0 * (k1a[i] + 2.0 * k2a[i] + 2.0 * k3a[i] + k4a[i]);
    b[i] += dt / 6.0 * (k1b[i] + 2.0 * k2b[i] + 2.0 * k3b[i] + k4b[i]);
  }
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

}  // namespace

EvolvePairResult evolve_pair(const ClassicalField1D& init, const PressureLaw& law,
                             const SymmetryParams& params, double t_end,
                             const EvolveOptions& options) {
  init.validate();
  params.validate();
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");

  const std::size_t n = init.size();
  const double dx = init.dx;

  std::vector<double> rho = init.rho;
  std::vector<double> u_cls = init.u;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = v_of_rho(law, params, rho[i]);
  std::vector<double> u_sym = init.u;

  // Blowup threshold from the initial gradient scale.
  const double grad0 = std::max({max_abs(central_derivative4(u_cls, dx)),
                                 max_abs(central_derivative4(v, dx)), 1e-8});
  const double blowup_limit = options.blowup_factor * grad0;

  auto max_speed = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double cs = std::sqrt(std::max(law.dp(rho[i]), 0.0));
      s = std::max(s, std::abs(u_cls[i]) + cs);
      s = std::max(s, std::abs(u_sym[i]) + std::abs(params.B + 0.5 * params.A * v[i]));
    }
    return s;
  };

  EvolvePairResult out;
  double t = 0.0;
  int steps = 0;
  const int max_steps = 4 * 1000 * 1000;
  while (t < t_end && steps < max_steps) {
    const double speed = max_speed();
    double dt = options.dt > 0.0 ? options.dt
                                 : options.cfl_fraction * dx / std::max(speed, 1e-14);
    if (options.dt > 0.0 && speed * dt / dx > 1.0)
      throw CflViolation("dt = " + std::to_string(dt) + " exceeds dx / max speed = " +
                         std::to_string(dx / speed));
    dt = std::min(dt, t_end - t);

    rk4_step(rho, u_cls, dx, dt,
             [&law](const auto& a, const auto& b, double h, auto& ka, auto& kb) {
               classical_rhs(a, b, h, law, ka, kb);
             });
    rk4_step(v, u_sym, dx, dt,
             [&params](const auto& a, const auto& b, double h, auto& ka, auto& kb) {
               symmetric_rhs(a, b, h, params, ka, kb);
             });
    t += dt;
    ++steps;

    const double grad = std::max(max_abs(central_derivative4(u_cls, dx)),
                                 max_abs(central_derivative4(u_sym, dx)));
    if (grad > blowup_limit) throw BlowupDetected(t, grad);
  }

  out.classical = ClassicalField1D{std::move(rho), std::move(u_cls), dx, t};
  out.symmetric = SymmetricField1D{std::move(v), std::move(u_sym), dx, t};
  out.v_from_classical.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.v_from_classical[i] = v_of_rho(law, params, out.classical.rho[i]);
  for (std::size_t i = 0; i < n; ++i)
    out.max_abs_diff = std::max(out.max_abs_diff,
                                std::abs(out.v_from_classical[i] - out.symmetric.v[i]));
  out.steps = steps;
  return out;
}

EvolvePairResult evolve_pair(const ClassicalField1D& init, const EosSpec& eos,
                             const SymmetryParams& params, double t_end,
                             const EvolveOptions& options) {
  return evolve_pair(init, PressureLaw::from_eos(eos), params, t_end, options);
}

}  // namespace logeuler
