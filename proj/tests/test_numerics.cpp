#include <cmath>

#include "doctest.h"
#include "logeuler/quadrature.hpp"
#include "logeuler/rng.hpp"
#include "logeuler/roots.hpp"

using namespace logeuler;

TEST_CASE("quadrature on known integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("safeguarded newton finds bracketed roots") {
  const auto f = [](double x) { return x * x - 2.0; };
  const auto df = [](double x) { return 2.0 * x; };
  const RootResult r = safeguarded_newton(f, df, 0.0, 2.0, 1.0, 1e-14, 1e-14);
  CHECK(r.root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // flat derivative forces bisection steps but still converges
  const auto g = [](double x) { return std::tanh(10.0 * (x - 0.7)); };
  const auto dg = [](double x) {
    const double t = std::tanh(10.0 * (x - 0.7));
    return 10.0 * (1.0 - t * t);
  };
  const RootResult r2 = safeguarded_newton(g, dg, 0.0, 1.0, 0.01, 1e-14, 1e-14);
  CHECK(r2.root == doctest::Approx(0.7).epsilon(1e-10));

  CHECK_THROWS_AS(safeguarded_newton(f, df, 2.0, 3.0, 2.5, 1e-14, 1e-14),
                  RootNotBracketed);
}

TEST_CASE("splitmix64 reference stream and uniforms") {
  // reference values for seed 1234567 (Vigna's splitmix64)
  SplitMix64 rng(1234567);
  CHECK(rng.next() == 6457827717110365317ull);
  CHECK(rng.next() == 3203168211198807973ull);

  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  SplitMix64 u(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  const double y = u.uniform(3.0, 5.0);
  CHECK(y >= 3.0);
  CHECK(y < 5.0);
}
