#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "logeuler/report.hpp"
#include "logeuler/scenario.hpp"
#include "logeuler/symmetrizer.hpp"

namespace logeuler {

/// One table for every verification threshold. tol-scale on the CLI
/// multiplies the upper-bound entries; convergence-order floors are fixed.
struct Tolerances {
  double derivative_fd_rel = 1e-7;
  double curvature_fd_rel = 1e-6;
  double ode_residual_scaled = 1e-12;
  double map_roundtrip_rel = 1e-10;       // v(rho) and back
  double sym_roundtrip_rel = 1e-9;        // w(rho, v) and back
  double sym_identity_rel = 1e-12;        // |v|^2 and Phi reconstruction
  double eigen_match_rel = 1e-10;
  double jacobian_fd_rel = 1e-6;
  double det_match_rel = 1e-10;
  double coeff_identity_rel = 1e-13;
  double cons_roundtrip_rel = 1e-10;
  double conservation_drift = 1e-12;
  double flux_eigen_rel = 1e-5;
  double variant_annihilation = 1e-8;
  double smooth_order_min = 1.8;
  double riemann_order_min = 0.8;

  Tolerances scaled(double factor) const;
};

struct SuiteOptions {
  int samples = 1000;
  std::uint64_t seed = 1;
  Tolerances tol;
  /// Directory for CSV artifacts; no files are written when unset.
  std::optional<std::filesystem::path> out_dir;
};

/// Derivative, family-membership, sound-speed-bound and lower-bound suites
/// for one EOS. Writes samples.csv when an output directory is given.
Report run_eos_checks(const EosSpec& eos, const SuiteOptions& opts);

/// Positive-definiteness, Jacobian, bijection and flux-matrix-variant suites
/// for the relativistic change of variables.
Report run_symmetrizer_checks(const EosSpec& eos, const SuiteOptions& opts);

/// Independent integrations of the Euler and symmetric forms compared
/// through the map, with a convergence fit; honors expect_equivalence.
Report run_equivalence_checks(const EquivalenceScenario& scenario,
                              const SuiteOptions& opts);

/// Scenario integration plus conservation / admissibility / convergence
/// checks appropriate to the initial data type.
Report run_hydro_checks(const HydroScenario& scenario, const SuiteOptions& opts);

/// Least-squares slope of log(error) against log(h): h and e paired, e > 0.
double convergence_order(const std::vector<double>& h, const std::vector<double>& e);

}  // namespace logeuler
