#include "logeuler/scenario.hpp"

#include <cmath>
#include <numbers>

#include "logeuler/report.hpp"

namespace logeuler {

namespace {

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

// Initial data outside the margins is a precondition failure of the
// scenario, reported as such before any stepping.
void reject_inadmissible_initial(const Grid1D& grid, const SolverConfig& cfg) {
  for (int i = 0; i < grid.cells(); ++i) {
    PrimState1D s;
    try {
      s = cons_to_prim(cfg.eos, grid.cell(i), cfg.window);
    } catch (const Error& e) {
      throw AssumptionViolation("initial data in cell " + std::to_string(i) +
                                " is not admissible: " + e.what());
    }
    if (!(s.rho >= cfg.window.rho_min()))
      throw AssumptionViolation("initial rho = " + std::to_string(s.rho) +
                                " in cell " + std::to_string(i) +
                                " is below rho_star + delta");
    if (!(s.v * s.v <= (1.0 - cfg.window.velocity_margin()) * cfg.eos.c * cfg.eos.c))
      throw AssumptionViolation("initial |v| in cell " + std::to_string(i) +
                                " violates the velocity margin");
  }
}

}  // namespace

HydroScenario hydro_scenario_from_json(const nlohmann::json& j) {
  HydroScenario s;
  if (j.contains("eos")) s.eos = j.at("eos").get<EosSpec>();
  s.cells = get_or(j, "cells", s.cells);
  if (s.cells < 4) throw ConfigError("scenario needs at least 4 cells");
  const std::string bc = get_or<std::string>(j, "bc", "periodic");
  if (bc == "periodic")
    s.bc = BoundaryKind::Periodic;
  else if (bc == "outflow")
    s.bc = BoundaryKind::Outflow;
  else
    throw ConfigError("bc must be \"periodic\" or \"outflow\"");
  s.cfl = get_or(j, "cfl", s.cfl);
  s.t_end = get_or(j, "t_end", s.t_end);
  const std::string lim = get_or<std::string>(j, "limiter", "none");
  if (lim == "none")
    s.limiter = Limiter::None;
  else if (lim == "minmod")
    s.limiter = Limiter::Minmod;
  else
    throw ConfigError("limiter must be \"none\" or \"minmod\"");
  const std::string rs = get_or<std::string>(j, "riemann", "hll");
  if (rs == "hll")
    s.riemann = RiemannKind::Hll;
  else if (rs == "rusanov")
    s.riemann = RiemannKind::Rusanov;
  else
    throw ConfigError("riemann must be \"hll\" or \"rusanov\"");
  s.x_min = get_or(j, "x_min", s.x_min);
  s.x_max = get_or(j, "x_max", s.x_max);
  s.snapshots = get_or(j, "snapshots", s.snapshots);
  if (s.snapshots < 2) throw ConfigError("snapshots must be >= 2");

  if (!j.contains("init")) throw ConfigError("scenario needs an \"init\" object");
  const auto& init = j.at("init");
  const std::string type = get_or<std::string>(init, "type", "");
  if (type == "smooth_wave") {
    SmoothWaveInit w;
    w.rho0 = get_or(init, "rho0", w.rho0);
    w.amplitude = get_or(init, "amplitude", w.amplitude);
    w.v0 = get_or(init, "v0", w.v0);
    w.modes = get_or(init, "modes", w.modes);
    s.init = w;
  } else if (type == "riemann") {
    RiemannInit r;
    r.rho_left = get_or(init, "rho_left", r.rho_left);
    r.rho_right = get_or(init, "rho_right", r.rho_right);
    r.v_left = get_or(init, "v_left", r.v_left);
    r.v_right = get_or(init, "v_right", r.v_right);
    r.x_split = get_or(init, "x_split", r.x_split);
    s.init = r;
  } else {
    throw ConfigError("init.type must be \"smooth_wave\" or \"riemann\"");
  }
  return s;
}

HydroScenario load_hydro_scenario(const std::filesystem::path& path) {
  return hydro_scenario_from_json(load_json_file(path));
}

Grid1D make_initial_grid(const HydroScenario& scenario) {
  Grid1D grid(scenario.cells, scenario.x_min, scenario.x_max, scenario.bc);
  const double L = scenario.x_max - scenario.x_min;
  for (int i = 0; i < grid.cells(); ++i) {
    const double x = grid.x_center(i);
    PrimState1D s;
    if (const auto* w = std::get_if<SmoothWaveInit>(&scenario.init)) {
      s.rho = w->rho0 + w->amplitude *
                            std::sin(2.0 * std::numbers::pi * w->modes * (x - scenario.x_min) / L);
      s.v = w->v0;
    } else {
      const auto& r = std::get<RiemannInit>(scenario.init);
      s.rho = x < r.x_split ? r.rho_left : r.rho_right;
      s.v = x < r.x_split ? r.v_left : r.v_right;
    }
    grid.cell(i) = prim_to_cons(scenario.eos, s);
  }
  grid.sync_ghosts();
  return grid;
}

RunSummary run_scenario(const HydroScenario& scenario,
                        const std::filesystem::path& out_dir) {
  SolverConfig cfg;
  cfg.cfl = scenario.cfl;
  cfg.t_end = scenario.t_end;
  cfg.limiter = scenario.limiter;
  cfg.riemann = scenario.riemann;
  cfg.eos = scenario.eos;
  cfg.window = lemma1_bounds(scenario.eos);
  cfg.validate();

  Grid1D grid = make_initial_grid(scenario);
  reject_inadmissible_initial(grid, cfg);

  std::filesystem::create_directories(out_dir);
  CsvWriter csv(out_dir / "snapshots.csv");
  csv.header({"t", "x", "rho", "v", "p", "D", "S"});

  const auto emit = [&](const Grid1D& g) {
    for (int i = 0; i < g.cells(); ++i) {
      const PrimState1D s = cons_to_prim(cfg.eos, g.cell(i), cfg.window);
      if (!(s.rho >= cfg.window.rho_star) || !(std::abs(s.v) < cfg.eos.c))
        throw InadmissibleTarget("cell " + std::to_string(i) +
                                 " left the admissible set at t = " +
                                 std::to_string(g.time()));
      csv.row({g.time(), g.x_center(i), s.rho, s.v, pressure(cfg.eos, s.rho),
               g.cell(i).D, g.cell(i).S});
    }
  };

  const double d0 = grid.total_D();
  const double s0 = grid.total_S();

  RunSummary summary;
  emit(grid);
  int next_snapshot = 1;
  const int max_steps = 10 * 1000 * 1000;
  while (grid.time() < scenario.t_end && summary.steps < max_steps) {
    const double t_snap =
        scenario.t_end * next_snapshot / (scenario.snapshots - 1);
    const double cap = std::min(t_snap, scenario.t_end) - grid.time();
    const StepStats st = step(grid, cfg, cap);
    summary.clamped_cells += st.clamped_cells;
    ++summary.steps;
    if (grid.time() >= t_snap - 1e-14 * scenario.t_end) {
      emit(grid);
      ++next_snapshot;
      if (next_snapshot >= scenario.snapshots) break;
    }
  }

  summary.t_final = grid.time();
  summary.drift_D = std::abs(grid.total_D() - d0) / std::max(std::abs(d0), 1e-300);
  summary.drift_S =
      std::abs(grid.total_S() - s0) / std::max(std::abs(s0), std::abs(d0) * scenario.eos.c);
  summary.artifacts.push_back(csv.path());
  return summary;
}

ScenarioFinal integrate_scenario(const HydroScenario& scenario) {
  SolverConfig cfg;
  cfg.cfl = scenario.cfl;
  cfg.t_end = scenario.t_end;
  cfg.limiter = scenario.limiter;
  cfg.riemann = scenario.riemann;
  cfg.eos = scenario.eos;
  cfg.window = lemma1_bounds(scenario.eos);
  cfg.validate();

  Grid1D grid = make_initial_grid(scenario);
  reject_inadmissible_initial(grid, cfg);
  const double d0 = grid.total_D();
  const double s0 = grid.total_S();

  ScenarioFinal out;
  const int max_steps = 10 * 1000 * 1000;
  while (grid.time() < scenario.t_end && out.steps < max_steps) {
    const StepStats st = step(grid, cfg, scenario.t_end - grid.time());
    out.clamped_cells += st.clamped_cells;
    ++out.steps;
  }

  out.dx = grid.dx();
  out.t = grid.time();
  out.rho.resize(static_cast<std::size_t>(grid.cells()));
  out.v.resize(static_cast<std::size_t>(grid.cells()));
  for (int i = 0; i < grid.cells(); ++i) {
    const PrimState1D s = cons_to_prim(cfg.eos, grid.cell(i), cfg.window);
    if (!(s.rho >= cfg.window.rho_star) || !(std::abs(s.v) < cfg.eos.c))
      throw InadmissibleTarget("cell " + std::to_string(i) +
                               " left the admissible set at t = " +
                               std::to_string(grid.time()));
    out.rho[static_cast<std::size_t>(i)] = s.rho;
    out.v[static_cast<std::size_t>(i)] = s.v;
  }
  out.drift_D = std::abs(grid.total_D() - d0) / std::max(std::abs(d0), 1e-300);
  out.drift_S = std::abs(grid.total_S() - s0) /
                std::max(std::abs(s0), std::abs(d0) * scenario.eos.c);
  return out;
}

EquivalenceScenario equivalence_scenario_from_json(const nlohmann::json& j) {
  EquivalenceScenario s;
  if (j.contains("eos")) s.eos = j.at("eos").get<EosSpec>();
  s.params.A = get_or(j, "A", s.eos.A);
  s.params.B = get_or(j, "B", 0.0);
  s.params.validate();
  s.cells = get_or(j, "cells", s.cells);
  s.refinements = get_or(j, "refinements", s.refinements);
  s.t_end = get_or(j, "t_end", s.t_end);
  s.rho0 = get_or(j, "rho0", s.rho0);
  s.perturbation = get_or(j, "perturbation", s.perturbation);
  s.non_member = get_or(j, "non_member", false);
  s.expect_equivalence = get_or(j, "expect_equivalence", !s.non_member);
  if (s.cells < 8) throw ConfigError("equivalence scenario needs >= 8 cells");
  if (s.refinements < 2) throw ConfigError("equivalence scenario needs >= 2 refinements");
  return s;
}

EquivalenceScenario load_equivalence_scenario(const std::filesystem::path& path) {
  return equivalence_scenario_from_json(load_json_file(path));
}

ClassicalField1D make_equivalence_initial(const EquivalenceScenario& scenario,
                                          int cells) {
  ClassicalField1D f;
  f.dx = 1.0 / cells;
  f.rho.resize(static_cast<std::size_t>(cells));
  f.u.assign(static_cast<std::size_t>(cells), 0.0);
  for (int i = 0; i < cells; ++i) {
    const double x = (i + 0.5) * f.dx;
    f.rho[static_cast<std::size_t>(i)] =
        scenario.rho0 +
        scenario.perturbation * std::sin(2.0 * std::numbers::pi * x);
  }
  f.validate();
  return f;
}

}  // namespace logeuler
