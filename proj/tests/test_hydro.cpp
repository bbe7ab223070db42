#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"
#include "logeuler/hydro.hpp"
#include "logeuler/rng.hpp"
#include "logeuler/scenario.hpp"

using namespace logeuler;

namespace {

const EosSpec kLog = EosSpec::logarithmic();
const AdmissibleWindow kWindow{1.0, 1000.0, 1e-6};

}  // namespace

TEST_CASE("conserved variables at rest and superluminal guard") {
  const ConsState u = prim_to_cons(kLog, {3.0, 0.0});
  CHECK(u.D == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(u.S == 0.0);
  CHECK_THROWS_AS(prim_to_cons(kLog, {3.0, 1.0}), SuperluminalState);
  CHECK_THROWS_AS(prim_to_cons(kLog, {-1.0, 0.0}), NonpositiveDensity);

  // D grows monotonically toward the light speed
  double prev = 0.0;
  for (double v : {0.0, 0.5, 0.9, 0.99, 0.999}) {
    const double D = prim_to_cons(kLog, {3.0, v}).D;
    CHECK(D > prev);
    prev = D;
  }
}

TEST_CASE("recovery: zero-velocity branch, round trips, failures") {
  const PrimState1D rest = cons_to_prim(kLog, {3.0, 0.0}, kWindow);
  CHECK(rest.rho == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rest.v == 0.0);

  const ConsState u = prim_to_cons(kLog, {2.0, 0.5});
  const PrimState1D s = cons_to_prim(kLog, u, kWindow);
  CHECK(s.rho == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(s.v == doctest::Approx(0.5).epsilon(1e-10));

  SplitMix64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PrimState1D p{rng.uniform(1.0 + 1e-6, 800.0), rng.uniform(-0.95, 0.95)};
    const PrimState1D q = cons_to_prim(kLog, prim_to_cons(kLog, p), kWindow);
    worst = std::max(worst, std::abs(q.rho - p.rho) / p.rho);
    worst = std::max(worst, std::abs(q.v - p.v));
  }
  CHECK(worst <= 1e-10);

  // halving D below the window floor leaves no admissible root
  CHECK_THROWS_AS(cons_to_prim(kLog, {0.5, 0.0}, kWindow), RecoveryFailure);
  CHECK_THROWS_AS(cons_to_prim(kLog, {-1.0, 0.0}, kWindow), RecoveryFailure);
}

TEST_CASE("flux: rest state and the flux_D = S identity") {
  const Flux1D f0 = flux(kLog, {2.0, 0.0});
  CHECK(f0.D == 0.0);
  CHECK(f0.S == doctest::Approx(std::log(2.0)).epsilon(1e-15));

  SplitMix64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const PrimState1D p{rng.uniform(1.0, 100.0), rng.uniform(-0.9, 0.9)};
    CHECK(flux(kLog, p).D == prim_to_cons(kLog, p).S);  // same expression
  }
}

TEST_CASE("flux jacobian eigenvalues are the characteristic speeds") {
  const PrimState1D s{2.0, 0.3};
  const ConsState u0 = prim_to_cons(kLog, s);

  // numerical d(flux)/d(cons) through the recovery map
  Eigen::Matrix2d jac;
  const double hD = 1e-6 * u0.D;
  const double hS = 1e-6 * std::max(std::abs(u0.S), 1.0);
  const auto flux_of = [&](double D, double S) {
    const PrimState1D p = cons_to_prim(kLog, {D, S}, kWindow);
    const Flux1D f = flux(kLog, p);
    return Eigen::Vector2d(f.D, f.S);
  };
  jac.col(0) = (flux_of(u0.D + hD, u0.S) - flux_of(u0.D - hD, u0.S)) / (2.0 * hD);
  jac.col(1) = (flux_of(u0.D, u0.S + hS) - flux_of(u0.D, u0.S - hS)) / (2.0 * hS);

  const Eigen::Vector2cd ev = jac.eigenvalues();
  double got_min = std::min(ev(0).real(), ev(1).real());
  double got_max = std::max(ev(0).real(), ev(1).real());
  const auto [lm, lp] = characteristic_speeds(kLog, s);
  CHECK(std::abs(got_min - lm) <= 1e-5);
  CHECK(std::abs(got_max - lp) <= 1e-5);

  // equal-state interface bounds bracket those eigenvalues, up to the
  // finite-difference accuracy of the numeric Jacobian
  const auto [smin, smax] = wave_speeds(kLog, s, s);
  CHECK(smin <= got_min + 1e-5);
  CHECK(smax >= got_max - 1e-5);
}

TEST_CASE("wave speed bounds stay subluminal") {
  // rest state with sound speed 1/2: p' = 1/rho = 1/4
  const auto [m, p] = wave_speeds(kLog, {4.0, 0.0}, {4.0, 0.0});
  CHECK(m == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(p == doctest::Approx(0.5).epsilon(1e-15));

  SplitMix64 rng(13);
  for (int i = 0; i < 1000; ++i) {
    const PrimState1D a{rng.uniform(1.0, 500.0), rng.uniform(-0.99, 0.99)};
    const PrimState1D b{rng.uniform(1.0, 500.0), rng.uniform(-0.99, 0.99)};
    const auto [lo, hi] = wave_speeds(kLog, a, b);
    CHECK(std::abs(lo) < 1.0);
    CHECK(std::abs(hi) < 1.0);
    CHECK(lo <= hi);
  }
}

TEST_CASE("grid ghosts follow the boundary policy") {
  Grid1D g(8, 0.0, 1.0, BoundaryKind::Periodic);
  for (int i = 0; i < 8; ++i) g.cell(i) = ConsState{double(i + 1), double(-i)};
  g.sync_ghosts();
  CHECK(g.padded(-1).D == 8.0);
  CHECK(g.padded(-2).D == 7.0);
  CHECK(g.padded(8).D == 1.0);
  CHECK(g.padded(9).D == 2.0);

  Grid1D h(8, 0.0, 1.0, BoundaryKind::Outflow);
  for (int i = 0; i < 8; ++i) h.cell(i) = ConsState{double(i + 1), 0.0};
  h.sync_ghosts();
  CHECK(h.padded(-1).D == 1.0);
  CHECK(h.padded(-2).D == 1.0);
  CHECK(h.padded(9).D == 8.0);

  CHECK_THROWS_AS(Grid1D(2, 0.0, 1.0, BoundaryKind::Periodic), GridTooSmall);
}

TEST_CASE("uniform state is a fixed point of the step") {
  SolverConfig cfg;
  cfg.eos = kLog;
  cfg.window = kWindow;
  cfg.t_end = 1.0;
  Grid1D g(32, 0.0, 1.0, BoundaryKind::Periodic);
  const ConsState u = prim_to_cons(kLog, {2.0, 0.3});
  for (int i = 0; i < 32; ++i) g.cell(i) = u;
  g.sync_ghosts();

  for (int n = 0; n < 5; ++n) step(g, cfg);
  for (int i = 0; i < 32; ++i) {
    CHECK(g.cell(i).D == u.D);  // flux differences cancel exactly
    CHECK(g.cell(i).S == u.S);
  }
}

TEST_CASE("periodic conservation and admissibility over many steps") {
  SolverConfig cfg;
  cfg.eos = kLog;
  cfg.window = kWindow;
  cfg.t_end = 1.0;
  Grid1D g(64, 0.0, 1.0, BoundaryKind::Periodic);
  for (int i = 0; i < 64; ++i)
    g.cell(i) = prim_to_cons(kLog, {2.0 + 0.05 * std::sin(2.0 * M_PI * g.x_center(i)), 0.0});
  g.sync_ghosts();

  const double d0 = g.total_D();
  const double s0 = g.total_S();
  for (int n = 0; n < 200; ++n) step(g, cfg);
  CHECK(std::abs(g.total_D() - d0) / d0 <= 1e-12);
  CHECK(std::abs(g.total_S() - s0) <= 1e-12 * d0);
  for (int i = 0; i < 64; ++i) {
    const PrimState1D s = cons_to_prim(kLog, g.cell(i), kWindow);
    CHECK(s.rho >= kWindow.rho_star);
    CHECK(std::abs(s.v) < 1.0);
  }
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  cfg.eos = kLog;
  cfg.window = kWindow;
  cfg.cfl = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.cfl = 0.45;
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("scenario json parsing and defaults") {
  const auto j = nlohmann::json::parse(R"({
    "eos": {"family": "logarithmic", "A": -1.0, "K1": 1.0, "K": 0.0, "c": 1.0},
    "cells": 64,
    "bc": "outflow",
    "cfl": 0.3,
    "t_end": 0.2,
    "limiter": "minmod",
    "riemann": "rusanov",
    "init": {"type": "riemann", "rho_left": 4.0, "rho_right": 2.0}
  })");
  const HydroScenario s = hydro_scenario_from_json(j);
  CHECK(s.cells == 64);
  CHECK(s.bc == BoundaryKind::Outflow);
  CHECK(s.cfl == 0.3);
  CHECK(s.limiter == Limiter::Minmod);
  CHECK(s.riemann == RiemannKind::Rusanov);
  CHECK(std::get<RiemannInit>(s.init).rho_left == 4.0);
  CHECK(std::get<RiemannInit>(s.init).x_split == 0.5);  // default

  CHECK_THROWS_AS(hydro_scenario_from_json(nlohmann::json::parse(R"({"init":{"type":"bad"}})")),
                  ConfigError);
  CHECK_THROWS_AS(hydro_scenario_from_json(nlohmann::json::parse(R"({"cells":64})")),
                  ConfigError);
}

TEST_CASE("rusanov flux also conserves and stays admissible") {
  HydroScenario s;
  s.eos = kLog;
  s.cells = 64;
  s.t_end = 0.2;
  s.riemann = RiemannKind::Rusanov;
  s.init = SmoothWaveInit{2.0, 0.01, 0.0, 1};
  const ScenarioFinal fin = integrate_scenario(s);
  CHECK(fin.drift_D <= 1e-12);
  CHECK(fin.clamped_cells == 0);
}
