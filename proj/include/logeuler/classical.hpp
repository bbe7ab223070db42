#pragma once

#include <functional>
#include <span>
#include <vector>

#include "logeuler/eos.hpp"

namespace logeuler {

/// Barotropic pressure law as three callables. The transformation machinery
/// is written against this so it can also run on laws outside the EosSpec
/// family; the falsification checks rely on that.
struct PressureLaw {
  std::function<double(double)> p;
  std::function<double(double)> dp;
  std::function<double(double)> d2p;

  static PressureLaw from_eos(const EosSpec& eos);
  /// p = rho + rho^3. Not a member of the family; used to show that the
  /// equivalence with the symmetric form genuinely fails off-family.
  static PressureLaw cubic_outside_family();
};

/// Constants of the symmetric first-order system
///   v_t + B div(u) = -u.grad(v) - (A/2) v div(u)
///   u_t + B grad(v) = -u.grad(u) - (A/2) v grad(v)
struct SymmetryParams {
  double A = -1.0;  ///< coupling constant, nonzero
  double B = 0.0;   ///< shift constant

  void validate() const;
};

/// The symmetrizing diffeomorphism v(rho) = (2/A) (sqrt(p'(rho)) - B).
double v_of_rho(const PressureLaw& law, const SymmetryParams& params, double rho);
double v_of_rho(const EosSpec& eos, const SymmetryParams& params, double rho);

/// v'(rho) = p''(rho) / (A sqrt(p'(rho))).
double dv_drho(const PressureLaw& law, const SymmetryParams& params, double rho);

/// Closed-form inverse of v_of_rho using the family's power form
/// p' = K1 rho^A. Throws OutOfRange when B + (A/2) v <= 0.
double rho_of_v(const EosSpec& eos, const SymmetryParams& params, double v);

/// Smooth periodic (rho, u) snapshot on a uniform grid.
struct ClassicalField1D {
  std::vector<double> rho;
  std::vector<double> u;
  double dx = 0.0;
  double t = 0.0;

  std::size_t size() const { return rho.size(); }
  void validate() const;
};

/// Smooth periodic (v, u) snapshot of the symmetric system.
struct SymmetricField1D {
  std::vector<double> v;
  std::vector<double> u;
  double dx = 0.0;
  double t = 0.0;

  std::size_t size() const { return v.size(); }
};

/// Fourth-order central first derivative on a periodic grid.
std::vector<double> central_derivative4(std::span<const double> f, double dx);

struct ResidualPair {
  std::vector<double> first;   ///< continuity (or v-equation) residual
  std::vector<double> second;  ///< velocity-equation residual
};

/// Pointwise residuals of the compressible Euler system
///   rho_t + (rho u)_x = 0,   rho (u_t + u u_x) + p_x = 0
/// with caller-supplied time derivatives and fourth-order spatial derivatives.
ResidualPair residual_classical(const ClassicalField1D& field,
                                std::span<const double> rho_t,
                                std::span<const double> u_t,
                                const PressureLaw& law);

/// Pointwise residuals of the symmetric system, same conventions.
ResidualPair residual_symmetric(const SymmetricField1D& field,
                                std::span<const double> v_t,
                                std::span<const double> u_t,
                                const SymmetryParams& params);

struct EvolveOptions {
  double dt = 0.0;             ///< fixed step; <= 0 selects cfl_fraction * dx / max speed
  double cfl_fraction = 0.2;
  double blowup_factor = 1e3;  ///< abort when max|u_x| exceeds this times the initial scale
};

struct EvolvePairResult {
  ClassicalField1D classical;            ///< final Euler-form state
  SymmetricField1D symmetric;            ///< final symmetric-form state
  std::vector<double> v_from_classical;  ///< v(rho) of the final Euler state
  double max_abs_diff = 0.0;             ///< max_i |v_from_classical[i] - symmetric.v[i]|
  int steps = 0;
};

/// Integrates the Euler form and the symmetric form independently from
/// matched initial data (RK4 in time, fourth-order central space, periodic),
/// then compares the final states through the map v.
EvolvePairResult evolve_pair(const ClassicalField1D& init, const PressureLaw& law,
                             const SymmetryParams& params, double t_end,
                             const EvolveOptions& options = {});

EvolvePairResult evolve_pair(const ClassicalField1D& init, const EosSpec& eos,
                             const SymmetryParams& params, double t_end,
                             const EvolveOptions& options = {});

}  // namespace logeuler
