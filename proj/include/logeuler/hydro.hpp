#pragma once

#include <utility>
#include <vector>

#include "logeuler/eos.hpp"

namespace logeuler {

struct PrimState1D {
  double rho = 0.0;
  double v = 0.0;
};

/// Conserved pair of the planar relativistic Euler system:
///   D = (rho c^2 + p) / (c^2 - v^2) - p / c^2
///   S = (rho c^2 + p) v / (c^2 - v^2)
struct ConsState {
  double D = 0.0;
  double S = 0.0;
};

struct Flux1D {
  double D = 0.0;
  double S = 0.0;
};

ConsState prim_to_cons(const EosSpec& eos, const PrimState1D& s);

/// Newton iteration on rho with v eliminated through v = S c^2 / (D c^2 + p),
/// bisection-safeguarded over [rho_star, expandable rho_max]. rho_guess <= 0
/// picks a default start.
PrimState1D cons_to_prim(const EosSpec& eos, const ConsState& cs,
                         const AdmissibleWindow& window, double rho_guess = 0.0);

Flux1D flux(const EosSpec& eos, const PrimState1D& s);

/// Characteristic speeds (v -+ c_s) / (1 -+ v c_s / c^2) of one state.
std::pair<double, double> characteristic_speeds(const EosSpec& eos,
                                                const PrimState1D& s);

/// HLL bounds: slowest/fastest characteristic over the two states.
std::pair<double, double> wave_speeds(const EosSpec& eos, const PrimState1D& left,
                                      const PrimState1D& right);

enum class BoundaryKind { Periodic, Outflow };
enum class Limiter { None, Minmod };
enum class RiemannKind { Hll, Rusanov };

struct SolverConfig {
  double cfl = 0.45;
  double t_end = 0.0;
  Limiter limiter = Limiter::None;
  RiemannKind riemann = RiemannKind::Hll;
  EosSpec eos;
  AdmissibleWindow window;
  /// Clamp inadmissible recovered states instead of failing; every clamp is
  /// counted and reported.
  bool allow_clamp = false;

  void validate() const;
};

/// Uniform mesh of conserved states with two ghost cells per side.
class Grid1D {
 public:
  static constexpr int kGhost = 2;

  Grid1D(int cells, double x_min, double x_max, BoundaryKind bc);

  int cells() const { return cells_; }
  double dx() const { return dx_; }
  double x_min() const { return x_min_; }
  double x_center(int i) const { return x_min_ + (i + 0.5) * dx_; }
  BoundaryKind boundary() const { return bc_; }

  double time() const { return t_; }
  void set_time(double t) { t_ = t; }

  /// Interior cell access, i in [0, cells).
  ConsState& cell(int i) { return data_[static_cast<std::size_t>(i + kGhost)]; }
  const ConsState& cell(int i) const { return data_[static_cast<std::size_t>(i + kGhost)]; }

  /// Ghost-inclusive access, j in [-kGhost, cells + kGhost).
  ConsState& padded(int j) { return data_[static_cast<std::size_t>(j + kGhost)]; }
  const ConsState& padded(int j) const { return data_[static_cast<std::size_t>(j + kGhost)]; }

  void sync_ghosts();

  double total_D() const;  ///< sum of D * dx over interior cells
  double total_S() const;

 private:
  int cells_;
  double x_min_;
  double dx_;
  BoundaryKind bc_;
  double t_ = 0.0;
  std::vector<ConsState> data_;
};

struct StepStats {
  double dt = 0.0;
  double max_speed = 0.0;
  int clamped_cells = 0;
};

/// One SSP-RK2 step: piecewise-linear reconstruction of the primitives
/// (central or minmod slopes), interface fluxes, conservative update,
/// recovery validation after each stage. dt_cap > 0 limits the step.
StepStats step(Grid1D& grid, const SolverConfig& cfg, double dt_cap = 0.0);

}  // namespace logeuler
