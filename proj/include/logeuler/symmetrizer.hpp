#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "logeuler/eos.hpp"
#include "logeuler/rng.hpp"

namespace logeuler {

struct PrimState {
  double rho = 0.0;
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double v_squared() const { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }
};

/// Symmetrizing variables w = (w0, w1, w2, w3).
struct SymState {
  std::array<double, 4> w{0.0, 0.0, 0.0, 0.0};
};

/// Scalar coefficients of the symmetric-system matrices. All strictly
/// positive on admissible states.
struct CoeffSet {
  double Psi, B1, B2, B3, B4, B5;
};

/// Outcome of the positive-definiteness verification of the mass matrix:
/// closed-form eigenvalues of the velocity-block Schur complement against a
/// numeric eigendecomposition, plus a Cholesky attempt on the full matrix.
struct SpdReport {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  std::array<double, 3> numeric{};  ///< ascending numeric eigenvalues
  double max_rel_eigen_error = 0.0;
  bool cholesky_ok = false;
  bool spd = false;
};

/// The time-matrix row-0/column-0 entry of the flux matrices admits two
/// readings; the velocity-weighted one is the one that annihilates exact
/// solutions (see resolve_ak_variant) and is the default everywhere.
enum class AkVariant {
  VelocityWeighted,  ///< entry (0,0) = Psi * B2 * v_k
  Unweighted,        ///< entry (0,0) = Psi * B2
};

/// Monotone cubic Hermite interpolant of phi on [rho_star, rho_max]. Slopes
/// may be supplied exactly (the integrand is known in closed form); when
/// omitted they are estimated Fritsch-Carlson style.
class PhiTable {
 public:
  PhiTable(std::vector<double> rho, std::vector<double> phi,
           std::vector<double> slope = {});

  double rho_min() const { return rho_.front(); }
  double rho_max() const { return rho_.back(); }
  double operator()(double rho) const;

 private:
  std::vector<double> rho_;
  std::vector<double> phi_;
  std::vector<double> slope_;
};

/// Relativistic change of variables and coefficient matrices for the Euler
/// system with a logarithmic pressure law. Pure functions of the state; the
/// optional phi table is built once and then only read.
class Symmetrizer {
 public:
  Symmetrizer(EosSpec eos, AdmissibleWindow window, bool enforce_margins = true);
  explicit Symmetrizer(const EosSpec& eos);  ///< window from lemma1_bounds

  const EosSpec& eos() const { return eos_; }
  const AdmissibleWindow& window() const { return window_; }

  /// kappa = c^2 rho_star + p(rho_star), the normalization making
  /// big_phi(rho_star) = 1 and w(rho_star, 0) = 0.
  double kappa() const { return kappa_; }

  /// phi(rho) = integral from rho_star to rho of c^2 / (s c^2 + p(s)) ds.
  double phi(double rho) const;

  /// Phi(rho) = kappa e^phi / (rho c^2 + p); strictly decreasing, Phi(rho_star) = 1.
  double big_phi(double rho) const;
  double big_phi_prime(double rho) const;

  SymState to_sym(const PrimState& s) const;
  PrimState from_sym(const SymState& w) const;

  CoeffSet coeffs(const PrimState& s) const;
  Eigen::Matrix4d assemble_A0(const PrimState& s) const;
  Eigen::Matrix4d assemble_Ak(const PrimState& s, int k,
                              AkVariant variant = AkVariant::VelocityWeighted) const;
  SpdReport check_A0_spd(const PrimState& s) const;

  /// Analytic Jacobian d w / d (rho, v) and its closed-form determinant.
  Eigen::Matrix4d jacobian_w(const PrimState& s) const;
  double jacobian_det(const PrimState& s) const;

  /// Quasilinear matrices of the conservative relativistic system in
  /// primitive variables: d(cons)/d(rho,v) and d(flux_k)/d(rho,v).
  Eigen::Matrix4d cons_jacobian_prim(const PrimState& s) const;
  Eigen::Matrix4d flux_jacobian_prim(const PrimState& s, int k) const;

  /// Exact-solution annihilation defect of a flux-matrix variant:
  /// max-entry norm of A^k J - A^0 J E^{-1} F^k, scaled by the norms of the
  /// two products. Zero (to rounding) exactly when the symmetric system is
  /// satisfied by all solutions of the conservative system.
  double variant_residual(const PrimState& s, int k, AkVariant variant) const;

  void build_phi_table(int nodes = 2048);
  void clear_phi_table() { table_.reset(); }
  const PhiTable* phi_table() const { return table_ ? &*table_ : nullptr; }

  /// Uniform sample of the admissible box: rho in [rho_min, rho_max],
  /// |v|^2 <= vmax_fraction * (1 - margin) c^2, direction anisotropic.
  PrimState random_admissible(SplitMix64& rng, double vmax_fraction = 0.9) const;

  /// Throws when margins are enforced and the state violates them.
  void require_admissible(const PrimState& s) const;

 private:
  double phi_exact(double rho) const;
  double phi_exact_segment(double a, double b) const;

  EosSpec eos_;
  AdmissibleWindow window_;
  bool enforce_margins_;
  double kappa_;
  std::optional<PhiTable> table_;
};

struct VariantResolution {
  AkVariant selected = AkVariant::VelocityWeighted;
  double residual_selected = 0.0;  ///< worst scaled defect of the accepted variant
  double residual_rejected = 0.0;  ///< best scaled defect of the rejected variant
};

/// Samples random admissible states and gradient directions and identifies
/// the unique flux-matrix variant whose symmetric system annihilates exact
/// solutions of the conservative system. Deterministic for a fixed rng seed.
VariantResolution resolve_ak_variant(const Symmetrizer& sym, int samples,
                                     SplitMix64& rng);

}  // namespace logeuler
