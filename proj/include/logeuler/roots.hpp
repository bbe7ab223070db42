#pragma once

#include <cmath>
#include <utility>

#include "logeuler/errors.hpp"

namespace logeuler {

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Newton iteration on f over the bracket [lo, hi]; any step that leaves the
/// bracket, or fails to shrink |f|, is replaced by a bisection step. f(lo)
/// and f(hi) must have opposite signs.
template <class F, class DF>
RootResult safeguarded_newton(F&& f, DF&& df, double lo, double hi, double x0,
                              double x_tol, double f_tol, int max_iter = 100) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw RootNotBracketed("no sign change over [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }

  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  double fx = f(x);
  RootResult out{x, fx, 0};
  for (int it = 1; it <= max_iter; ++it) {
    out.iterations = it;
    if (std::abs(fx) <= f_tol) break;
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }

    double d = df(x);
    double x_next = (d != 0.0) ? x - fx / d : lo;
    if (!(x_next > lo && x_next < hi)) x_next = 0.5 * (lo + hi);

    if (std::abs(x_next - x) <= x_tol * (std::abs(x) + x_tol)) {
      x = x_next;
      fx = f(x);
      out = {x, fx, it};
      break;
    }
    x = x_next;
    fx = f(x);
    out.root = x;
    out.residual = fx;
  }
  return out;
}

}  // namespace logeuler
