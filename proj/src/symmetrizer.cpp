#include "logeuler/symmetrizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "logeuler/quadrature.hpp"
#include "logeuler/roots.hpp"

namespace logeuler {

PhiTable::PhiTable(std::vector<double> rho, std::vector<double> phi,
                   std::vector<double> slope)
    : rho_(std::move(rho)), phi_(std::move(phi)), slope_(std::move(slope)) {
  const std::size_t n = rho_.size();
  if (n < 4 || phi_.size() != n) throw ConfigError("phi table needs >= 4 nodes");
  if (!slope_.empty()) {
    if (slope_.size() != n) throw ConfigError("phi table slope length mismatch");
    return;
  }

  // Fritsch-Carlson slopes keep the interpolant monotone like the data.
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    secant[i] = (phi_[i + 1] - phi_[i]) / (rho_[i + 1] - rho_[i]);
  slope_.assign(n, 0.0);
  slope_[0] = secant[0];
  slope_[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (secant[i - 1] * secant[i] <= 0.0) {
      slope_[i] = 0.0;
    } else {
      // harmonic mean, weighted by interval widths
      const double h0 = rho_[i] - rho_[i - 1];
      const double h1 = rho_[i + 1] - rho_[i];
      slope_[i] = 3.0 * (h0 + h1) /
                  ((2.0 * h1 + h0) / secant[i - 1] + (h1 + 2.0 * h0) / secant[i]);
    }
  }
}

double PhiTable::operator()(double rho) const {
  if (!(rho >= rho_.front() && rho <= rho_.back()))
    throw OutOfRange("phi table evaluated outside [" + std::to_string(rho_.front()) +
                     ", " + std::to_string(rho_.back()) + "]");
  const auto it = std::upper_bound(rho_.begin(), rho_.end(), rho);
  const std::size_t i = std::min<std::size_t>(
      rho_.size() - 2, static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                           0, std::distance(rho_.begin(), it) - 1)));
  const double h = rho_[i + 1] - rho_[i];
  const double t = (rho - rho_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * phi_[i] + h10 * h * slope_[i] + h01 * phi_[i + 1] + h11 * h * slope_[i + 1];
}

Symmetrizer::Symmetrizer(EosSpec eos, AdmissibleWindow window, bool enforce_margins)
    : eos_(eos), window_(window), enforce_margins_(enforce_margins) {
  eos_.validate();
  window_.validate();
  if (!eos_.is_logarithmic())
    throw AssumptionViolation(
        "the relativistic symmetrizer is built for the logarithmic law");
  kappa_ = enthalpy_density(eos_, window_.rho_star);
  if (!(kappa_ > 0.0))
    throw AssumptionViolation("rho c^2 + p must be positive at rho_star");
}

Symmetrizer::Symmetrizer(const EosSpec& eos)
    : Symmetrizer(eos, lemma1_bounds(eos)) {}

// Research mode (margins off) tolerates a hair below rho_star so centered
// finite differences remain evaluable at the window floor.
constexpr double kRhoSlack = 1e-3;

void Symmetrizer::require_admissible(const PrimState& s) const {
  const double c2 = eos_.c * eos_.c;
  if (s.v_squared() >= c2) throw SuperluminalState(s.v_squared(), eos_.c);
  if (!enforce_margins_) {
    if (!(s.rho >= window_.rho_star * (1.0 - kRhoSlack)))
      throw AssumptionViolation("rho = " + std::to_string(s.rho) +
                                " below rho_star = " + std::to_string(window_.rho_star));
    return;
  }
  if (!(s.rho >= window_.rho_min()))
    throw AssumptionViolation("rho = " + std::to_string(s.rho) +
                              " below rho_star + delta = " +
                              std::to_string(window_.rho_min()));
  // a few ulp of slack so states constructed exactly on the margin pass
  const double limit = (1.0 - window_.velocity_margin()) * c2 *
                       (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
  if (!(s.v_squared() <= limit))
    throw AssumptionViolation("|v|^2 = " + std::to_string(s.v_squared()) +
                              " above the (1 - delta) c^2 margin");
}

double Symmetrizer::phi_exact_segment(double a, double b) const {
  const EosSpec eos = eos_;
  return integrate(
      [eos](double s) { return eos.c * eos.c / enthalpy_density(eos, s); }, a, b);
}

double Symmetrizer::phi_exact(double rho) const {
  return phi_exact_segment(window_.rho_star, rho);
}

double Symmetrizer::phi(double rho) const {
  if (!(rho >= window_.rho_star)) {
    if (!(rho > 0.0)) throw NonpositiveDensity(rho);
    if (rho >= window_.rho_star * (1.0 - kRhoSlack))
      return -phi_exact_segment(rho, window_.rho_star);
    throw AssumptionViolation("phi evaluated below rho_star");
  }
  if (table_ && rho <= table_->rho_max()) return (*table_)(rho);
  return phi_exact(rho);
}

double Symmetrizer::big_phi(double rho) const {
  return kappa_ * std::exp(phi(rho)) / enthalpy_density(eos_, rho);
}

double Symmetrizer::big_phi_prime(double rho) const {
  const double h = enthalpy_density(eos_, rho);
  return -kappa_ * dp_drho(eos_, rho) * std::exp(phi(rho)) / (h * h);
}

SymState Symmetrizer::to_sym(const PrimState& s) const {
  require_admissible(s);
  const double c = eos_.c;
  const double root = std::sqrt(c * c - s.v_squared());
  const double f = big_phi(s.rho) / root;
  SymState w;
  w.w[0] = -c * c * c * f + c * c;
  for (int k = 0; k < 3; ++k) w.w[k + 1] = c * f * s.v[k];
  return w;
}

PrimState Symmetrizer::from_sym(const SymState& w) const {
  const double c = eos_.c;
  const double c2 = c * c;
  const double wsq = w.w[1] * w.w[1] + w.w[2] * w.w[2] + w.w[3] * w.w[3];
  const double gap = c2 - w.w[0];
  const double disc = gap * gap - c2 * wsq;
  if (!(gap > 0.0) || !(disc > 0.0))
    throw InvalidSymState("(c^2 - w0)^2 - c^2 |w|^2 must be positive");

  double phi_target = std::sqrt(disc) / c2;
  if (phi_target > 1.0 + 64.0 * std::numeric_limits<double>::epsilon())
    throw RootNotBracketed("Phi target " + std::to_string(phi_target) +
                           " exceeds Phi(rho_star) = 1");
  phi_target = std::min(phi_target, 1.0);

  // Phi is strictly decreasing, so the root is unique once bracketed; expand
  // the upper end geometrically before giving up.
  double hi = window_.rho_max;
  const double hi_cap = 1e6 * window_.rho_star;
  while (big_phi(hi) > phi_target && hi < hi_cap) hi = std::min(2.0 * hi, hi_cap);
  if (big_phi(hi) > phi_target)
    throw RootNotBracketed("Phi target " + std::to_string(phi_target) +
                           " below Phi(" + std::to_string(hi) + ")");

  const auto f = [&](double r) { return big_phi(r) - phi_target; };
  const auto df = [&](double r) { return big_phi_prime(r); };
  const RootResult root = safeguarded_newton(f, df, window_.rho_star, hi,
                                             /*x0=*/std::min(2.0 * window_.rho_star, hi),
                                             /*x_tol=*/1e-14, /*f_tol=*/1e-14 * phi_target);

  PrimState s;
  s.rho = std::clamp(root.root, window_.rho_star, hi);
  const double vsq = c2 * c2 * wsq / (gap * gap);
  if (!(vsq < c2)) throw InvalidSymState("recovered |v|^2 is not subluminal");
  const double scale = std::sqrt(c2 - vsq) / (c * phi_target);
  for (int k = 0; k < 3; ++k) s.v[k] = w.w[k + 1] * scale;
  return s;
}

CoeffSet Symmetrizer::coeffs(const PrimState& s) const {
  require_admissible(s);
  const double c = eos_.c;
  const double c2 = c * c;
  const double c4 = c2 * c2;
  const double vsq = s.v_squared();
  const double W = c2 - vsq;
  const double dp = dp_drho(eos_, s.rho);
  const double h = enthalpy_density(eos_, s.rho);

  CoeffSet cs;
  cs.Psi = h * h / (c * c2 * kappa_ * dp * std::exp(phi(s.rho)) * W * std::sqrt(W));
  cs.B1 = c4 + 3.0 * dp * vsq;
  cs.B2 = c4 + 2.0 * c2 * dp + dp * vsq;
  cs.B3 = c2 * (c2 + 3.0 * dp);
  cs.B4 = c2 * dp * W;
  cs.B5 = c2 * dp * W / h;
  return cs;
}

Eigen::Matrix4d Symmetrizer::assemble_A0(const PrimState& s) const {
  const CoeffSet cs = coeffs(s);
  Eigen::Matrix4d m;
  m(0, 0) = cs.B1;
  for (int i = 0; i < 3; ++i) {
    const double off = cs.B2 * s.v[i];  // one computation feeds both triangles
    m(0, i + 1) = off;
    m(i + 1, 0) = off;
    for (int j = i; j < 3; ++j) {
      const double entry = cs.B3 * s.v[i] * s.v[j] + (i == j ? cs.B4 : 0.0);
      m(i + 1, j + 1) = entry;
      m(j + 1, i + 1) = entry;
    }
  }
  return cs.Psi * m;
}

Eigen::Matrix4d Symmetrizer::assemble_Ak(const PrimState& s, int k,
                                         AkVariant variant) const {
  if (k < 1 || k > 3) throw OutOfRange("flux direction k must be 1, 2 or 3");
  const CoeffSet cs = coeffs(s);
  const int kk = k - 1;
  const double vk = s.v[kk];
  Eigen::Matrix4d m;
  m(0, 0) = variant == AkVariant::VelocityWeighted ? cs.B2 * vk : cs.B2;
  for (int j = 0; j < 3; ++j) {
    const double off = cs.B3 * s.v[j] * vk + (j == kk ? cs.B4 : 0.0);
    m(0, j + 1) = off;
    m(j + 1, 0) = off;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const double entry = cs.B3 * s.v[i] * s.v[j] * vk +
                           cs.B4 * ((j == kk ? s.v[i] : 0.0) + (i == kk ? s.v[j] : 0.0) +
                                    (i == j ? vk : 0.0));
      m(i + 1, j + 1) = entry;
      m(j + 1, i + 1) = entry;
    }
  }
  return cs.Psi * m;
}

SpdReport Symmetrizer::check_A0_spd(const PrimState& s) const {
  const CoeffSet cs = coeffs(s);
  const double c2 = eos_.c * eos_.c;
  const double c4 = c2 * c2;
  const double vsq = s.v_squared();
  const double W = c2 - vsq;
  const double dp = dp_drho(eos_, s.rho);

  SpdReport rep;
  rep.lambda1 = cs.B4;
  rep.lambda2 = cs.B4;
  rep.lambda3 = dp * W * W * (c4 - dp * vsq) / (c4 + 3.0 * dp * vsq);

  // Schur complement of the (0,0) entry in the scalar-stripped mass matrix.
  // B3 - B2^2/B1 cancels catastrophically near the light-speed margin; the
  // expanded product form below is identical and keeps every factor positive.
  Eigen::Matrix3d schur;
  const double coef =
      -dp * W * (c4 + dp * (4.0 * c2 - vsq)) / cs.B1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      schur(i, j) = coef * s.v[i] * s.v[j] + (i == j ? cs.B4 : 0.0);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(schur);
  for (int i = 0; i < 3; ++i) rep.numeric[i] = eig.eigenvalues()(i);

  std::array<double, 3> closed{rep.lambda1, rep.lambda2, rep.lambda3};
  std::sort(closed.begin(), closed.end());
  for (int i = 0; i < 3; ++i) {
    const double denom = std::max(std::abs(closed[i]), 1e-300);
    rep.max_rel_eigen_error = std::max(
        rep.max_rel_eigen_error, std::abs(closed[i] - rep.numeric[i]) / denom);
  }

  Eigen::LLT<Eigen::Matrix4d> llt(assemble_A0(s));
  rep.cholesky_ok = llt.info() == Eigen::Success;
  rep.spd = cs.B1 > 0.0 && rep.lambda1 > 0.0 && rep.lambda3 > 0.0;
  return rep;
}

Eigen::Matrix4d Symmetrizer::jacobian_w(const PrimState& s) const {
  require_admissible(s);
  const double c = eos_.c;
  const double c2 = c * c;
  const double vsq = s.v_squared();
  const double W = c2 - vsq;
  const double Phi = big_phi(s.rho);
  const double ratio = big_phi_prime(s.rho) / Phi;

  Eigen::Matrix4d m;
  m(0, 0) = -c2 * W * ratio;
  for (int j = 0; j < 3; ++j) {
    m(0, j + 1) = -c2 * s.v[j];
    m(j + 1, 0) = W * ratio * s.v[j];
    for (int i = 0; i < 3; ++i)
      m(j + 1, i + 1) = s.v[j] * s.v[i] + (i == j ? W : 0.0);
  }
  return (c * Phi / (W * std::sqrt(W))) * m;
}

double Symmetrizer::jacobian_det(const PrimState& s) const {
  require_admissible(s);
  const double c = eos_.c;
  const double c6 = std::pow(c, 6);
  const double W = c * c - s.v_squared();
  const double Phi = big_phi(s.rho);
  return -c6 * Phi * Phi * Phi * big_phi_prime(s.rho) / (W * W);
}

Eigen::Matrix4d Symmetrizer::cons_jacobian_prim(const PrimState& s) const {
  require_admissible(s);
  const double c2 = eos_.c * eos_.c;
  const double vsq = s.v_squared();
  const double W = c2 - vsq;
  const double h = enthalpy_density(eos_, s.rho);
  const double dp = dp_drho(eos_, s.rho);
  const double h_rho = c2 + dp;

  Eigen::Matrix4d m;
  m(0, 0) = h_rho / W - dp / c2;
  for (int j = 0; j < 3; ++j) m(0, j + 1) = 2.0 * h * s.v[j] / (W * W);
  for (int i = 0; i < 3; ++i) {
    m(i + 1, 0) = h_rho * s.v[i] / W;
    for (int j = 0; j < 3; ++j)
      m(i + 1, j + 1) = h * ((i == j ? W : 0.0) + 2.0 * s.v[i] * s.v[j]) / (W * W);
  }
  return m;
}

Eigen::Matrix4d Symmetrizer::flux_jacobian_prim(const PrimState& s, int k) const {
  if (k < 1 || k > 3) throw OutOfRange("flux direction k must be 1, 2 or 3");
  require_admissible(s);
  const int kk = k - 1;
  const double c2 = eos_.c * eos_.c;
  const double vsq = s.v_squared();
  const double W = c2 - vsq;
  const double h = enthalpy_density(eos_, s.rho);
  const double dp = dp_drho(eos_, s.rho);
  const double h_rho = c2 + dp;
  const double vk = s.v[kk];

  Eigen::Matrix4d m;
  m(0, 0) = h_rho * vk / W;
  for (int j = 0; j < 3; ++j)
    m(0, j + 1) = h * ((j == kk ? W : 0.0) + 2.0 * vk * s.v[j]) / (W * W);
  for (int i = 0; i < 3; ++i) {
    m(i + 1, 0) = h_rho * s.v[i] * vk / W + (i == kk ? dp : 0.0);
    for (int j = 0; j < 3; ++j)
      m(i + 1, j + 1) = h * ((i == j ? vk * W : 0.0) + (j == kk ? s.v[i] * W : 0.0) +
                             2.0 * s.v[i] * vk * s.v[j]) / (W * W);
  }
  return m;
}

double Symmetrizer::variant_residual(const PrimState& s, int k, AkVariant variant) const {
  const Eigen::Matrix4d J = jacobian_w(s);
  const Eigen::Matrix4d E = cons_jacobian_prim(s);
  const Eigen::Matrix4d F = flux_jacobian_prim(s, k);
  const Eigen::Matrix4d lhs = assemble_Ak(s, k, variant) * J;
  const Eigen::Matrix4d rhs = assemble_A0(s) * J * E.inverse() * F;
  const double scale = std::max({lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff(), 1e-300});
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

void Symmetrizer::build_phi_table(int nodes) {
  if (nodes < 4) throw ConfigError("phi table needs >= 4 nodes");
  std::vector<double> rho(nodes), phi_vals(nodes), slopes(nodes);
  const double lo = window_.rho_star;
  const double hi = window_.rho_max;
  const double ratio = hi / lo;
  // Geometric node spacing tracks the integrand's curvature near rho_star;
  // exact slopes come from the closed-form integrand. Accumulating panel by
  // panel keeps each node to one short integral.
  double acc = 0.0;
  double prev = lo;
  for (int i = 0; i < nodes; ++i) {
    const double r = i + 1 == nodes
                         ? hi
                         : lo * std::pow(ratio, static_cast<double>(i) / (nodes - 1));
    acc += phi_exact_segment(prev, r);
    rho[i] = r;
    phi_vals[i] = acc;
    slopes[i] = eos_.c * eos_.c / enthalpy_density(eos_, r);
    prev = r;
  }
  table_.emplace(std::move(rho), std::move(phi_vals), std::move(slopes));
}

PrimState Symmetrizer::random_admissible(SplitMix64& rng, double vmax_fraction) const {
  PrimState s;
  s.rho = rng.uniform(window_.rho_min(), window_.rho_max);
  const double c2 = eos_.c * eos_.c;
  const double vmax2 = vmax_fraction * (1.0 - window_.velocity_margin()) * c2;
  // anisotropic direction, speed uniform in [0, sqrt(vmax2)]
  double n[3];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& ni : n) {
      ni = rng.uniform(-1.0, 1.0);
      norm2 += ni * ni;
    }
  } while (norm2 < 1e-12);
  const double speed = rng.uniform() * std::sqrt(vmax2);
  const double scale = speed / std::sqrt(norm2);
  for (int i = 0; i < 3; ++i) s.v[i] = n[i] * scale;
  return s;
}

VariantResolution resolve_ak_variant(const Symmetrizer& sym, int samples,
                                     SplitMix64& rng) {
  double worst_weighted = 0.0;
  double worst_unweighted = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const PrimState s = sym.random_admissible(rng);
    for (int k = 1; k <= 3; ++k) {
      worst_weighted = std::max(
          worst_weighted, sym.variant_residual(s, k, AkVariant::VelocityWeighted));
      worst_unweighted = std::min(
          worst_unweighted, sym.variant_residual(s, k, AkVariant::Unweighted));
    }
  }
  VariantResolution out;
  // Accept the weighted variant only when it annihilates and the other does
  // not; otherwise report the smaller defect without claiming resolution.
  if (worst_weighted < 1e-8 && worst_unweighted > 1e-3) {
    out.selected = AkVariant::VelocityWeighted;
    out.residual_selected = worst_weighted;
    out.residual_rejected = worst_unweighted;
  } else if (worst_unweighted < 1e-8 && worst_weighted > 1e-3) {
    out.selected = AkVariant::Unweighted;
    out.residual_selected = worst_unweighted;
    out.residual_rejected = worst_weighted;
  } else {
    throw Error("flux-matrix variant resolution is ambiguous: defects " +
                std::to_string(worst_weighted) + " vs " +
                std::to_string(worst_unweighted));
  }
  return out;
}

}  // namespace logeuler
