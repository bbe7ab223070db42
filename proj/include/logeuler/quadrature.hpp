#pragma once

#include <functional>

namespace logeuler {

/// Adaptive Gauss-Kronrod (15-point) integral of f over [a, b] to the given
/// relative tolerance. Throws QuadratureFailure when the error estimate does
/// not reach the requested tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

}  // namespace logeuler
