#include "logeuler/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "logeuler/errors.hpp"

namespace logeuler {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, /*max_depth=*/15, rel_tol, &error);
  if (!std::isfinite(value) ||
      error > 1e3 * rel_tol * std::max(1.0, std::abs(value))) {
    throw QuadratureFailure("integral over [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] did not converge (error estimate " +
                            std::to_string(error) + ")");
  }
  return value;
}

}  // namespace logeuler
