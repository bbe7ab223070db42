#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "logeuler/classical.hpp"
#include "logeuler/hydro.hpp"
#include "logeuler/serialization.hpp"

namespace logeuler {

struct SmoothWaveInit {
  double rho0 = 2.0;
  double amplitude = 0.01;
  double v0 = 0.0;
  int modes = 1;
};

struct RiemannInit {
  double rho_left = 5.0;
  double rho_right = 2.0;
  double v_left = 0.0;
  double v_right = 0.0;
  double x_split = 0.5;
};

struct HydroScenario {
  EosSpec eos = EosSpec::logarithmic();
  int cells = 256;
  BoundaryKind bc = BoundaryKind::Periodic;
  double cfl = 0.45;
  double t_end = 0.4;
  Limiter limiter = Limiter::None;
  RiemannKind riemann = RiemannKind::Hll;
  double x_min = 0.0;
  double x_max = 1.0;
  int snapshots = 2;  ///< evenly spaced output times, including t = 0 and t_end
  std::variant<SmoothWaveInit, RiemannInit> init = SmoothWaveInit{};
};

HydroScenario hydro_scenario_from_json(const nlohmann::json& j);
HydroScenario load_hydro_scenario(const std::filesystem::path& path);

Grid1D make_initial_grid(const HydroScenario& scenario);

struct RunSummary {
  int steps = 0;
  double t_final = 0.0;
  double drift_D = 0.0;  ///< |sum D dx - initial| / |initial|
  double drift_S = 0.0;  ///< momentum drift over max(|initial S|, D c)
  int clamped_cells = 0;
  std::vector<std::filesystem::path> artifacts;
};

/// Integrates the scenario to t_end, writing snapshot rows
/// (t,x,rho,v,p,D,S) to <out_dir>/snapshots.csv and checking admissibility
/// at every output time.
RunSummary run_scenario(const HydroScenario& scenario,
                        const std::filesystem::path& out_dir);

/// Final primitive fields of a scenario integration, no file output.
struct ScenarioFinal {
  std::vector<double> rho;
  std::vector<double> v;
  double dx = 0.0;
  double t = 0.0;
  int steps = 0;
  double drift_D = 0.0;
  double drift_S = 0.0;
  int clamped_cells = 0;
};

ScenarioFinal integrate_scenario(const HydroScenario& scenario);

struct EquivalenceScenario {
  EosSpec eos = EosSpec::logarithmic();
  SymmetryParams params{-1.0, 0.0};
  int cells = 64;        ///< base resolution; refinements double it
  int refinements = 3;   ///< resolutions used by the convergence fit
  double t_end = 0.1;
  double rho0 = 2.0;
  double perturbation = 0.01;
  bool non_member = false;          ///< swap in the off-family cubic law
  bool expect_equivalence = true;   ///< falsification scenarios set false
};

EquivalenceScenario equivalence_scenario_from_json(const nlohmann::json& j);
EquivalenceScenario load_equivalence_scenario(const std::filesystem::path& path);

ClassicalField1D make_equivalence_initial(const EquivalenceScenario& scenario,
                                          int cells);

}  // namespace logeuler
