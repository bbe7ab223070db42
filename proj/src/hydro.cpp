#include "logeuler/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logeuler/roots.hpp"

namespace logeuler {

ConsState prim_to_cons(const EosSpec& eos, const PrimState1D& s) {
  if (!(s.rho > 0.0)) throw NonpositiveDensity(s.rho);
  const double c2 = eos.c * eos.c;
  if (!(s.v * s.v < c2)) throw SuperluminalState(s.v * s.v, eos.c);
  const double p = pressure(eos, s.rho);
  const double h = s.rho * c2 + p;
  const double W = c2 - s.v * s.v;
  return ConsState{h / W - p / c2, h * s.v / W};
}

Flux1D flux(const EosSpec& eos, const PrimState1D& s) {
  if (!(s.rho > 0.0)) throw NonpositiveDensity(s.rho);
  const double c2 = eos.c * eos.c;
  if (!(s.v * s.v < c2)) throw SuperluminalState(s.v * s.v, eos.c);
  const double p = pressure(eos, s.rho);
  const double h = s.rho * c2 + p;
  const double W = c2 - s.v * s.v;
  return Flux1D{h * s.v / W, h * s.v * s.v / W + p};
}

PrimState1D cons_to_prim(const EosSpec& eos, const ConsState& cs,
                         const AdmissibleWindow& window, double rho_guess) {
  if (!(cs.D > 0.0))
    throw RecoveryFailure("conserved density must be positive", cs.D, cs.S);
  const double c2 = eos.c * eos.c;

  // v(rho) = S c^2 / (D c^2 + p(rho)); defect in the conserved density.
  const auto v_of = [&](double rho) { return cs.S * c2 / (cs.D * c2 + pressure(eos, rho)); };
  const auto defect = [&](double rho) {
    const double p = pressure(eos, rho);
    const double v = cs.S * c2 / (cs.D * c2 + p);
    const double W = c2 - v * v;
    return (rho * c2 + p) / W - p / c2 - cs.D;
  };
  const auto defect_prime = [&](double rho) {
    const double p = pressure(eos, rho);
    const double dp = dp_drho(eos, rho);
    const double q = cs.D * c2 + p;
    const double v = cs.S * c2 / q;
    const double dv = -cs.S * c2 * dp / (q * q);
    const double W = c2 - v * v;
    const double h = rho * c2 + p;
    return (c2 + dp) / W + h * 2.0 * v * dv / (W * W) - dp / c2;
  };

  double lo = window.rho_star;
  double hi = window.rho_max;
  const double hi_cap = 1e6 * window.rho_star;
  // The defect is increasing in rho on the admissible branch; expand the
  // upper end if needed, then demand a sign change.
  while (defect(hi) < 0.0 && hi < hi_cap) hi = std::min(2.0 * hi, hi_cap);
  const double f_lo = defect(lo);
  const double f_hi = defect(hi);
  if (f_lo > 0.0 || f_hi < 0.0) {
    if (f_lo == 0.0) {
      // root exactly at the floor
    } else {
      throw RecoveryFailure("no admissible density bracket in [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]",
                            cs.D, cs.S);
    }
  }

  const double scale = std::max(cs.D, 1.0);
  const double start = rho_guess > 0.0 ? rho_guess : std::clamp(cs.D, lo, hi);
  RootResult root;
  try {
    root = safeguarded_newton(defect, defect_prime, lo, hi, start,
                              /*x_tol=*/1e-13, /*f_tol=*/1e-11 * scale,
                              /*max_iter=*/50);
  } catch (const RootNotBracketed&) {
    throw RecoveryFailure("density root escaped its bracket", cs.D, cs.S);
  }
  if (std::abs(root.residual) > 1e-9 * scale)
    throw RecoveryFailure("density iteration stalled with defect " +
                              std::to_string(root.residual),
                          cs.D, cs.S);

  PrimState1D out{root.root, v_of(root.root)};
  if (!(out.rho >= window.rho_star))
    throw InadmissibleTarget("recovered rho = " + std::to_string(out.rho) +
                             " below rho_star = " + std::to_string(window.rho_star));
  if (!(out.v * out.v < c2))
    throw InadmissibleTarget("recovered |v| = " + std::to_string(std::abs(out.v)) +
                             " is not subluminal");
  return out;
}

std::pair<double, double> characteristic_speeds(const EosSpec& eos,
                                                const PrimState1D& s) {
  const double cs = sound_speed(eos, s.rho);
  const double c2 = eos.c * eos.c;
  const double minus = (s.v - cs) / (1.0 - s.v * cs / c2);
  const double plus = (s.v + cs) / (1.0 + s.v * cs / c2);
  return {minus, plus};
}

std::pair<double, double> wave_speeds(const EosSpec& eos, const PrimState1D& left,
                                      const PrimState1D& right) {
  const auto [lm, lp] = characteristic_speeds(eos, left);
  const auto [rm, rp] = characteristic_speeds(eos, right);
  return {std::min(lm, rm), std::max(lp, rp)};
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
  eos.validate();
  window.validate();
}

Grid1D::Grid1D(int cells, double x_min, double x_max, BoundaryKind bc)
    : cells_(cells), x_min_(x_min), bc_(bc) {
  if (cells < 4) throw GridTooSmall(static_cast<std::size_t>(std::max(cells, 0)));
  if (!(x_max > x_min)) throw ConfigError("grid requires x_max > x_min");
  dx_ = (x_max - x_min) / cells;
  data_.assign(static_cast<std::size_t>(cells + 2 * kGhost), ConsState{});
}

void Grid1D::sync_ghosts() {
  for (int g = 1; g <= kGhost; ++g) {
    if (bc_ == BoundaryKind::Periodic) {
      padded(-g) = cell(cells_ - g);
      padded(cells_ - 1 + g) = cell(g - 1);
    } else {
      padded(-g) = cell(0);
      padded(cells_ - 1 + g) = cell(cells_ - 1);
    }
  }
}

double Grid1D::total_D() const {
  double sum = 0.0;
  for (int i = 0; i < cells_; ++i) sum += cell(i).D;
  return sum * dx_;
}

double Grid1D::total_S() const {
  double sum = 0.0;
  for (int i = 0; i < cells_; ++i) sum += cell(i).S;
  return sum * dx_;
}

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

Flux1D interface_flux(const EosSpec& eos, const PrimState1D& L, const PrimState1D& R,
                      RiemannKind kind) {
  const Flux1D fL = flux(eos, L);
  const Flux1D fR = flux(eos, R);
  const ConsState uL = prim_to_cons(eos, L);
  const ConsState uR = prim_to_cons(eos, R);

  if (kind == RiemannKind::Rusanov) {
    const auto [sl, sr] = wave_speeds(eos, L, R);
    const double a = std::max(std::abs(sl), std::abs(sr));
    return Flux1D{0.5 * (fL.D + fR.D) - 0.5 * a * (uR.D - uL.D),
                  0.5 * (fL.S + fR.S) - 0.5 * a * (uR.S - uL.S)};
  }

  const auto [sl, sr] = wave_speeds(eos, L, R);
  if (sl >= 0.0) return fL;
  if (sr <= 0.0) return fR;
  const double inv = 1.0 / (sr - sl);
  return Flux1D{(sr * fL.D - sl * fR.D + sl * sr * (uR.D - uL.D)) * inv,
                (sr * fL.S - sl * fR.S + sl * sr * (uR.S - uL.S)) * inv};
}

struct StageWork {
  std::vector<PrimState1D> prim;    // padded primitives
  std::vector<PrimState1D> slopes;  // padded slope per cell (d prim / d x * dx)
  std::vector<Flux1D> fluxes;       // interface fluxes, cells + 1
};

// Recover primitives for all padded cells; returns the clamp count.
int recover_all(const Grid1D& grid, const SolverConfig& cfg,
                std::vector<PrimState1D>& prim) {
  const int n = grid.cells();
  prim.resize(static_cast<std::size_t>(n + 2 * Grid1D::kGhost));
  int clamped = 0;
  for (int j = -Grid1D::kGhost; j < n + Grid1D::kGhost; ++j) {
    const ConsState& u = grid.padded(j);
    const std::size_t idx = static_cast<std::size_t>(j + Grid1D::kGhost);
    const double guess = prim[idx].rho;
    try {
      prim[idx] = cons_to_prim(cfg.eos, u, cfg.window, guess);
    } catch (const Error&) {
      if (!cfg.allow_clamp || !(u.D > 0.0)) {
        if (j >= 0 && j < n)
          throw RecoveryFailure("cell " + std::to_string(j) + " at t = " +
                                    std::to_string(grid.time()) + " is not recoverable",
                                u.D, u.S);
        throw;
      }
      // clamp to the nearest admissible state: floor density, cap speed
      const double c = cfg.eos.c;
      PrimState1D s{std::max(u.D, cfg.window.rho_star), 0.0};
      const double v_try = u.S * c * c / (u.D * c * c + pressure(cfg.eos, s.rho));
      const double v_cap = (1.0 - cfg.window.velocity_margin()) * c;
      s.v = std::clamp(v_try, -v_cap, v_cap);
      prim[idx] = s;
      ++clamped;
    }
  }
  return clamped;
}

// One forward-Euler stage of the conservative update; returns max wave speed.
double stage_update(Grid1D& grid, const SolverConfig& cfg, StageWork& work, double dt,
                    int& clamped) {
  const int n = grid.cells();
  grid.sync_ghosts();
  clamped += recover_all(grid, cfg, work.prim);

  auto& prim = work.prim;
  const auto at = [&](int j) -> const PrimState1D& {
    return prim[static_cast<std::size_t>(j + Grid1D::kGhost)];
  };

  // slopes over the one-ghost band so both interface sides exist
  work.slopes.resize(prim.size());
  for (int j = -1; j <= n; ++j) {
    const PrimState1D& m = at(j - 1);
    const PrimState1D& c0 = at(j);
    const PrimState1D& p = at(j + 1);
    PrimState1D slope;
    if (cfg.limiter == Limiter::Minmod) {
      slope.rho = minmod(c0.rho - m.rho, p.rho - c0.rho);
      slope.v = minmod(c0.v - m.v, p.v - c0.v);
    } else {
      slope.rho = 0.5 * (p.rho - m.rho);
      slope.v = 0.5 * (p.v - m.v);
    }
    work.slopes[static_cast<std::size_t>(j + Grid1D::kGhost)] = slope;
  }
  const auto slope_at = [&](int j) -> const PrimState1D& {
    return work.slopes[static_cast<std::size_t>(j + Grid1D::kGhost)];
  };

  double max_speed = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto [sm, sp] = characteristic_speeds(cfg.eos, at(j));
    max_speed = std::max({max_speed, std::abs(sm), std::abs(sp)});
  }

  work.fluxes.resize(static_cast<std::size_t>(n + 1));
  for (int f = 0; f <= n; ++f) {
    // interface f sits between cells f-1 and f
    const PrimState1D& cl = at(f - 1);
    const PrimState1D& sl = slope_at(f - 1);
    const PrimState1D& cr = at(f);
    const PrimState1D& sr = slope_at(f);
    PrimState1D L{cl.rho + 0.5 * sl.rho, cl.v + 0.5 * sl.v};
    PrimState1D R{cr.rho - 0.5 * sr.rho, cr.v - 0.5 * sr.v};
    // fall back to the cell averages if reconstruction left the state space
    const double c = cfg.eos.c;
    if (!(L.rho > 0.0) || !(L.v * L.v < c * c)) L = cl;
    if (!(R.rho > 0.0) || !(R.v * R.v < c * c)) R = cr;
    work.fluxes[static_cast<std::size_t>(f)] = interface_flux(cfg.eos, L, R, cfg.riemann);
  }

  const double lam = dt / grid.dx();
  for (int j = 0; j < n; ++j) {
    const Flux1D& fl = work.fluxes[static_cast<std::size_t>(j)];
    const Flux1D& fr = work.fluxes[static_cast<std::size_t>(j + 1)];
    grid.cell(j).D -= lam * (fr.D - fl.D);
    grid.cell(j).S -= lam * (fr.S - fl.S);
  }
  return max_speed;
}

}  // namespace

StepStats step(Grid1D& grid, const SolverConfig& cfg, double dt_cap) {
  cfg.validate();
  const int n = grid.cells();

  StageWork work;
  grid.sync_ghosts();
  int clamped = 0;
  clamped += recover_all(grid, cfg, work.prim);

  double max_speed = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto [sm, sp] = characteristic_speeds(
        cfg.eos, work.prim[static_cast<std::size_t>(j + Grid1D::kGhost)]);
    max_speed = std::max({max_speed, std::abs(sm), std::abs(sp)});
  }
  if (!(max_speed > 0.0)) max_speed = cfg.eos.c;

  double dt = cfg.cfl * grid.dx() / max_speed;
  if (dt_cap > 0.0) dt = std::min(dt, dt_cap);

  // Heun form of SSP-RK2: full Euler stage, then average with the start.
  std::vector<ConsState> start(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) start[static_cast<std::size_t>(j)] = grid.cell(j);

  const double speed1 = stage_update(grid, cfg, work, dt, clamped);
  const double speed2 = stage_update(grid, cfg, work, dt, clamped);
  for (int j = 0; j < n; ++j) {
    ConsState& u = grid.cell(j);
    const ConsState& u0 = start[static_cast<std::size_t>(j)];
    u.D = 0.5 * (u0.D + u.D);
    u.S = 0.5 * (u0.S + u.S);
  }
  grid.sync_ghosts();
  clamped += recover_all(grid, cfg, work.prim);

  const double speed_seen = std::max(speed1, speed2);
  if (speed_seen * dt / grid.dx() > 1.0)
    throw CflViolation("wave speed grew to " + std::to_string(speed_seen) +
                       " during a step of dt = " + std::to_string(dt));

  grid.set_time(grid.time() + dt);
  return StepStats{dt, speed_seen, clamped};
}

}  // namespace logeuler
