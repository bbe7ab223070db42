#include "logeuler/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace logeuler {

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  t.derivative_fd_rel *= factor;
  t.curvature_fd_rel *= factor;
  t.ode_residual_scaled *= factor;
  t.map_roundtrip_rel *= factor;
  t.sym_roundtrip_rel *= factor;
  t.sym_identity_rel *= factor;
  t.eigen_match_rel *= factor;
  t.jacobian_fd_rel *= factor;
  t.det_match_rel *= factor;
  t.coeff_identity_rel *= factor;
  t.cons_roundtrip_rel *= factor;
  t.conservation_drift *= factor;
  t.flux_eigen_rel *= factor;
  t.variant_annihilation *= factor;
  return t;
}

double convergence_order(const std::vector<double>& h, const std::vector<double>& e) {
  if (h.size() != e.size() || h.size() < 2)
    throw ConfigError("convergence fit needs >= 2 resolutions");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(e[i] > 0.0))
      throw ConfigError("convergence fit needs positive h and errors");
    const double x = std::log(h[i]);
    const double y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

double central_fd(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double rel_err(double got, double want, double scale) {
  return std::abs(got - want) / std::max(std::abs(want), scale);
}

}  // namespace

Report run_eos_checks(const EosSpec& eos, const SuiteOptions& opts) {
  Report rep;
  rep.command = "check-eos";
  rep.seed = opts.seed;
  eos.validate();

  // Sampling window: the derived one for the logarithmic law, a fixed
  // positive-density band otherwise.
  double lo = 0.1, hi = 100.0;
  double rho_star = 0.0;
  bool gate_ok = true;
  if (eos.is_logarithmic()) {
    rho_star = eos.K1 / (eos.c * eos.c);
    try {
      const AdmissibleWindow window = lemma1_bounds(eos);
      rep.add_flag("lower-bound-gate", true,
                   "rho_star = " + CsvWriter::format(window.rho_star));
      lo = window.rho_min();
      hi = window.rho_max;
    } catch (const AssumptionViolation& e) {
      gate_ok = false;
      rep.add_flag("lower-bound-gate", false, e.what());
      lo = rho_star;
      hi = 1e3 * rho_star;
    }
  }

  SplitMix64 rng(opts.seed);
  std::vector<double> rhos;
  rhos.reserve(static_cast<std::size_t>(opts.samples));
  for (int i = 0; i < opts.samples; ++i)
    rhos.push_back(lo * std::pow(hi / lo, rng.uniform()));  // log-uniform
  rhos.push_back(lo);
  rhos.push_back(hi);

  const auto p_of = [&](double r) { return pressure(eos, r); };
  const auto dp_of = [&](double r) { return dp_drho(eos, r); };

  double min_dp = std::numeric_limits<double>::infinity();
  double max_dp_err = 0.0, max_d2p_err = 0.0, max_ode = 0.0;
  double max_sound_excess = -std::numeric_limits<double>::infinity();
  double min_enthalpy = std::numeric_limits<double>::infinity();

  std::optional<CsvWriter> csv;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    csv.emplace(*opts.out_dir / "eos_samples.csv");
    csv->header({"rho", "p", "dp_drho", "d2p_drho2", "dp_fd_rel_err",
                 "d2p_fd_rel_err", "ode_residual_scaled", "subluminal"});
  }

  for (double r : rhos) {
    const double p = pressure(eos, r);
    const double dp = dp_drho(eos, r);
    const double d2p = d2p_drho2(eos, r);
    min_dp = std::min(min_dp, dp);

    const double h1 = 1e-5 * r;
    const double dp_fd = central_fd(p_of, r, h1);
    const double e1 = rel_err(dp_fd, dp, 1e-300);
    max_dp_err = std::max(max_dp_err, e1);

    const double h2 = 1e-4 * r;
    const double d2p_fd = central_fd(dp_of, r, h2);
    const double e2 = rel_err(d2p_fd, d2p, 1e-300);
    max_d2p_err = std::max(max_d2p_err, e2);

    double ode = std::numeric_limits<double>::infinity();
    try {
      ode = std::abs(ode_residual(eos, r)) / r;
    } catch (const ZeroCurvature&) {
      // flat p': no usable membership certificate; leave the metric infinite
    }
    max_ode = std::max(max_ode, ode);

    const bool sub = subluminal_check(eos, r);
    if (eos.is_logarithmic()) {
      max_sound_excess = std::max(max_sound_excess, dp - eos.c * eos.c);
      min_enthalpy = std::min(min_enthalpy, enthalpy_density(eos, r));
    }
    if (csv) csv->row({r, p, dp, d2p, e1, e2, ode, sub ? 1.0 : 0.0});
  }

  {
    auto& c = rep.add_flag("sound-speed-positive", min_dp > 0.0);
    c.metric = min_dp;
  }
  rep.add_upper("pressure-derivative-fd", max_dp_err, opts.tol.derivative_fd_rel);
  rep.add_upper("pressure-curvature-fd", max_d2p_err, opts.tol.curvature_fd_rel);
  rep.add_upper("family-ode-residual", max_ode, opts.tol.ode_residual_scaled,
                "scaled by rho");

  if (eos.is_logarithmic()) {
    rep.add_upper("sound-speed-bound-excess", max_sound_excess, 0.0,
                  "max over samples of p' - c^2 on [rho_star, rho_max]");
    if (gate_ok) {
      auto& c = rep.add_flag("enthalpy-positive", min_enthalpy > 0.0,
                             "min rho c^2 + p over the window");
      c.metric = min_enthalpy;
    }
  }

  if (eos.K == 0.0) {
    switch (eos.family) {
      case EosFamily::Polytropic:
        rep.add_flag("sign-pattern", pressure(eos, 0.7) > 0.0 && pressure(eos, 2.0) > 0.0,
                     "p > 0 everywhere");
        break;
      case EosFamily::Chaplygin:
        rep.add_flag("sign-pattern", pressure(eos, 0.7) < 0.0 && pressure(eos, 2.0) < 0.0,
                     "p < 0 everywhere");
        break;
      case EosFamily::Logarithmic:
        rep.add_flag("sign-pattern",
                     pressure(eos, 0.5) < 0.0 && pressure(eos, 2.0) > 0.0 &&
                         pressure(eos, 1.0) == 0.0,
                     "p < 0 below rho = 1, p > 0 above");
        break;
      case EosFamily::GeneralPower:
        break;
    }
  }

  if (csv) rep.artifacts.push_back(csv->path().filename().string());
  return rep;
}

Report run_symmetrizer_checks(const EosSpec& eos, const SuiteOptions& opts) {
  Report rep;
  rep.command = "verify-symmetrizer";
  rep.seed = opts.seed;

  const AdmissibleWindow window = lemma1_bounds(eos);
  const Symmetrizer sym(eos, window, /*enforce_margins=*/true);
  const Symmetrizer relaxed(eos, window, /*enforce_margins=*/false);
  SplitMix64 rng(opts.seed);

  const double c = eos.c;
  const double c2 = c * c;
  const double margin = window.velocity_margin();

  std::vector<PrimState> states;
  states.reserve(static_cast<std::size_t>(opts.samples) + 1);
  for (int i = 0; i < opts.samples; ++i)
    states.push_back(sym.random_admissible(rng, 0.99));
  {
    // mandated near-margin state: |v|^2 = 0.99 (1 - delta) c^2
    PrimState s;
    s.rho = 2.0 * window.rho_star;
    const double speed = std::sqrt(0.99 * (1.0 - margin) * c2);
    s.v = {speed / std::sqrt(3.0), speed / std::sqrt(3.0), speed / std::sqrt(3.0)};
    states.push_back(s);
  }

  std::optional<CsvWriter> csv;
  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    csv.emplace(*opts.out_dir / "symmetrizer_samples.csv");
    csv->header({"rho", "v1", "v2", "v3", "lambda1", "lambda3", "det",
                 "max_fd_err", "spd"});
  }

  bool all_spd = true, all_chol = true, all_coeff_pos = true;
  double max_eig_err = 0.0, max_jac_err = 0.0, max_det_err = 0.0;
  double min_det = std::numeric_limits<double>::infinity();
  double max_roundtrip = 0.0, max_identity = 0.0, max_coeff_identity = 0.0;

  for (const PrimState& s : states) {
    const SpdReport spd = sym.check_A0_spd(s);
    all_spd = all_spd && spd.spd;
    all_chol = all_chol && spd.cholesky_ok;
    max_eig_err = std::max(max_eig_err, spd.max_rel_eigen_error);

    const CoeffSet cs = sym.coeffs(s);
    all_coeff_pos = all_coeff_pos && cs.Psi > 0 && cs.B1 > 0 && cs.B2 > 0 &&
                    cs.B3 > 0 && cs.B4 > 0 && cs.B5 > 0;
    max_coeff_identity = std::max(
        max_coeff_identity,
        rel_err(cs.B5 * enthalpy_density(eos, s.rho), cs.B4, 1e-300));

    // analytic Jacobian against centered differences of the map; the
    // velocity step shrinks with c^2 - |v|^2 so the truncation error stays
    // flat up to the margin
    const Eigen::Matrix4d J = sym.jacobian_w(s);
    const double jscale = J.cwiseAbs().maxCoeff();
    const double w_gap = (c2 - s.v_squared()) / c2;
    Eigen::Matrix4d J_fd;
    for (int col = 0; col < 4; ++col) {
      const double h = col == 0 ? 1e-5 * s.rho : 1e-5 * c * w_gap;
      PrimState plus = s, minus = s;
      if (col == 0) {
        plus.rho += h;
        minus.rho -= h;
      } else {
        plus.v[col - 1] += h;
        minus.v[col - 1] -= h;
      }
      const SymState wp = relaxed.to_sym(plus);
      const SymState wm = relaxed.to_sym(minus);
      for (int row = 0; row < 4; ++row)
        J_fd(row, col) = (wp.w[row] - wm.w[row]) / (2.0 * h);
    }
    const double jac_err = (J - J_fd).cwiseAbs().maxCoeff() / jscale;
    max_jac_err = std::max(max_jac_err, jac_err);

    const double det_closed = sym.jacobian_det(s);
    const double det_num = J.determinant();
    min_det = std::min(min_det, det_closed);
    max_det_err = std::max(max_det_err, rel_err(det_num, det_closed, 1e-300));

    // bijection and the w-space reconstruction identities
    const SymState w = sym.to_sym(s);
    const PrimState back = sym.from_sym(w);
    double rt = std::abs(back.rho - s.rho) / s.rho;
    for (int k = 0; k < 3; ++k)
      rt = std::max(rt, std::abs(back.v[k] - s.v[k]) / c);
    max_roundtrip = std::max(max_roundtrip, rt);

    const double wsq = w.w[1] * w.w[1] + w.w[2] * w.w[2] + w.w[3] * w.w[3];
    const double gap = c2 - w.w[0];
    const double vsq_rec = c2 * c2 * wsq / (gap * gap);
    const double phi_rec = std::sqrt(gap * gap - c2 * wsq) / c2;
    const double ident =
        std::max(std::abs(vsq_rec - s.v_squared()) / c2,
                 std::abs(phi_rec - sym.big_phi(s.rho)));
    max_identity = std::max(max_identity, ident);

    if (csv)
      csv->row({s.rho, s.v[0], s.v[1], s.v[2], spd.lambda1, spd.lambda3,
                det_closed, jac_err, spd.spd ? 1.0 : 0.0});
  }

  // hard-margin state: qualitative only (the tiny Schur eigenvalue is below
  // double-precision resolution of the quantitative comparisons)
  {
    PrimState s;
    s.rho = 2.0 * window.rho_star;
    const double speed = std::sqrt((1.0 - margin) * c2);
    s.v = {speed, 0.0, 0.0};
    const SpdReport spd = sym.check_A0_spd(s);
    auto& c1 = rep.add_flag("margin-eigenvalue-positive",
                            spd.lambda3 > 0.0 && spd.spd,
                            "lambda3 = " + CsvWriter::format(spd.lambda3) +
                                " at the velocity margin");
    c1.metric = spd.lambda3;
    if (csv)
      csv->row({s.rho, s.v[0], s.v[1], s.v[2], spd.lambda1, spd.lambda3,
                sym.jacobian_det(s), 0.0, spd.spd ? 1.0 : 0.0});
  }

  rep.add_flag("mass-matrix-cholesky", all_chol);
  rep.add_flag("mass-matrix-spd", all_spd);
  rep.add_upper("schur-eigenvalue-match", max_eig_err, opts.tol.eigen_match_rel);
  rep.add_upper("jacobian-fd-match", max_jac_err, opts.tol.jacobian_fd_rel);
  rep.add_upper("jacobian-det-match", max_det_err, opts.tol.det_match_rel);
  {
    auto& c1 = rep.add_flag("jacobian-det-positive", min_det > 0.0);
    c1.metric = min_det;
  }
  rep.add_upper("bijection-roundtrip", max_roundtrip, opts.tol.sym_roundtrip_rel);
  rep.add_upper("state-reconstruction-identities", max_identity,
                opts.tol.sym_identity_rel);
  rep.add_flag("coefficients-positive", all_coeff_pos);
  rep.add_upper("coefficient-identity", max_coeff_identity,
                opts.tol.coeff_identity_rel, "B5 (rho c^2 + p) = B4");

  // strict decrease of the density potential over the window
  {
    bool decreasing = true;
    double prev = sym.big_phi(window.rho_star);
    const int n_scan = 1000;
    for (int i = 1; i <= n_scan; ++i) {
      const double r = window.rho_star +
                       (window.rho_max - window.rho_star) * i / double(n_scan);
      const double cur = sym.big_phi(r);
      decreasing = decreasing && cur < prev && sym.big_phi_prime(r) < 0.0;
      prev = cur;
    }
    rep.add_flag("density-potential-decreasing", decreasing);
  }

  // flux-matrix variant: exactly one entry-(0,0) reading annihilates exact
  // solutions of the conservative system
  {
    SplitMix64 vrng = rng.split();
    const VariantResolution vr = resolve_ak_variant(sym, std::min(opts.samples, 64), vrng);
    rep.add_flag("flux-matrix-variant",
                 vr.selected == AkVariant::VelocityWeighted &&
                     vr.residual_selected <= opts.tol.variant_annihilation,
                 "velocity-weighted defect " + CsvWriter::format(vr.residual_selected) +
                     ", unweighted defect " + CsvWriter::format(vr.residual_rejected));
  }

  if (csv) rep.artifacts.push_back(csv->path().filename().string());
  return rep;
}

Report run_equivalence_checks(const EquivalenceScenario& scenario,
                              const SuiteOptions& opts) {
  Report rep;
  rep.command = "equivalence";
  rep.seed = opts.seed;

  const PressureLaw law = scenario.non_member
                              ? PressureLaw::cubic_outside_family()
                              : PressureLaw::from_eos(scenario.eos);

  std::vector<double> dxs, diffs;
  EvolvePairResult finest;
  for (int level = 0; level < scenario.refinements; ++level) {
    const int cells = scenario.cells << level;
    const ClassicalField1D init = make_equivalence_initial(scenario, cells);
    EvolvePairResult r = evolve_pair(init, law, scenario.params, scenario.t_end);
    dxs.push_back(init.dx);
    diffs.push_back(r.max_abs_diff);
    if (level == scenario.refinements - 1) finest = std::move(r);
  }

  if (opts.out_dir) {
    std::filesystem::create_directories(*opts.out_dir);
    CsvWriter csv(*opts.out_dir / "equivalence.csv");
    csv.header({"cell_index", "x", "rho_classical", "v_transformed",
                "v_symmetric", "abs_diff"});
    for (std::size_t i = 0; i < finest.classical.size(); ++i) {
      const double x = (static_cast<double>(i) + 0.5) * finest.classical.dx;
      csv.row({static_cast<double>(i), x, finest.classical.rho[i],
               finest.v_from_classical[i], finest.symmetric.v[i],
               std::abs(finest.v_from_classical[i] - finest.symmetric.v[i])});
    }
    rep.artifacts.push_back(csv.path().filename().string());
  }

  const double d_max = *std::max_element(diffs.begin(), diffs.end());
  if (d_max < 1e-13) {
    // constant data: both integrations must sit still
    rep.add_upper("constant-data-difference", d_max, 1e-13);
    return rep;
  }

  const double order = convergence_order(dxs, diffs);
  std::string detail = "diffs";
  for (double d : diffs) detail += " " + CsvWriter::format(d);
  if (scenario.expect_equivalence) {
    rep.add_lower("equivalence-order", order, opts.tol.smooth_order_min, detail);
  } else {
    rep.add_flag("equivalence-breaks-off-family",
                 order < 0.5 && diffs.back() > 1e-6,
                 "order " + CsvWriter::format(order) + "; " + detail);
  }
  return rep;
}

namespace {

// L1 distance between a coarse field and the cellwise average of a finer one;
// fine must be an integer refinement of coarse.
double l1_against_restriction(const std::vector<double>& coarse, double dx_coarse,
                              const std::vector<double>& fine) {
  const std::size_t n = coarse.size();
  if (fine.size() % n != 0) throw ConfigError("incompatible restriction");
  const std::size_t r = fine.size() / n;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double avg = 0.0;
    for (std::size_t k = 0; k < r; ++k) avg += fine[i * r + k];
    avg /= static_cast<double>(r);
    sum += std::abs(coarse[i] - avg) * dx_coarse;
  }
  return sum;
}

}  // namespace

Report run_hydro_checks(const HydroScenario& scenario, const SuiteOptions& opts) {
  Report rep;
  rep.command = "run";
  rep.seed = opts.seed;

  RunSummary summary;
  if (opts.out_dir) {
    summary = run_scenario(scenario, *opts.out_dir);
    for (const auto& a : summary.artifacts)
      rep.artifacts.push_back(a.filename().string());  // relative to the report
  } else {
    const ScenarioFinal fin = integrate_scenario(scenario);
    summary.steps = fin.steps;
    summary.t_final = fin.t;
    summary.drift_D = fin.drift_D;
    summary.drift_S = fin.drift_S;
    summary.clamped_cells = fin.clamped_cells;
  }

  rep.add_flag("admissibility-at-outputs", true,
               std::to_string(summary.steps) + " steps to t = " +
                   CsvWriter::format(summary.t_final));
  if (scenario.bc == BoundaryKind::Periodic) {
    rep.add_upper("conservation-D-drift", summary.drift_D, opts.tol.conservation_drift);
    rep.add_upper("conservation-S-drift", summary.drift_S, opts.tol.conservation_drift);
  }
  {
    auto& c = rep.add_flag("no-clamped-cells", summary.clamped_cells == 0);
    c.metric = summary.clamped_cells;
  }

  if (std::holds_alternative<SmoothWaveInit>(scenario.init)) {
    // self-convergence across three refinements
    const int base = std::max(32, scenario.cells / 4);
    std::vector<std::vector<double>> rho;
    std::vector<double> dxs;
    for (int level = 0; level < 3; ++level) {
      HydroScenario s = scenario;
      s.cells = base << level;
      const ScenarioFinal fin = integrate_scenario(s);
      rho.push_back(fin.rho);
      dxs.push_back(fin.dx);
    }
    std::vector<double> h{dxs[0], dxs[1]};
    std::vector<double> e{l1_against_restriction(rho[0], dxs[0], rho[1]),
                          l1_against_restriction(rho[1], dxs[1], rho[2])};
    const double order = std::log2(e[0] / e[1]);
    rep.add_lower("smooth-self-convergence-order", order, opts.tol.smooth_order_min,
                  "L1 errors " + CsvWriter::format(e[0]) + " " + CsvWriter::format(e[1]));
  } else {
    // discontinuous data: compare against a high-resolution reference run
    HydroScenario ref = scenario;
    ref.cells = std::min(8192, 8 * scenario.cells);
    ref.limiter = Limiter::Minmod;
    const ScenarioFinal fin_ref = integrate_scenario(ref);

    std::vector<double> hs, es;
    for (int level = 2; level >= 0; --level) {
      HydroScenario s = scenario;
      s.cells = scenario.cells >> level;
      if (s.cells < 16 || ref.cells % s.cells != 0) continue;
      const ScenarioFinal fin = integrate_scenario(s);
      hs.push_back(fin.dx);
      es.push_back(l1_against_restriction(fin.rho, fin.dx, fin_ref.rho));
    }
    const double order = convergence_order(hs, es);
    std::string detail = "L1 errors";
    for (double e : es) detail += " " + CsvWriter::format(e);
    rep.add_lower("reference-convergence-order", order, opts.tol.riemann_order_min,
                  detail);
  }
  return rep;
}

}  // namespace logeuler
