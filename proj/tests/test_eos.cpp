#include <cmath>

#include "doctest.h"
#include "logeuler/eos.hpp"
#include "logeuler/rng.hpp"
#include "logeuler/serialization.hpp"

using namespace logeuler;

namespace {

double central_fd(double (*f)(const EosSpec&, double), const EosSpec& eos, double x,
                  double h) {
  return (f(eos, x + h) - f(eos, x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("pressure values per family") {
  CHECK(pressure(EosSpec::logarithmic(), 1.0) == 0.0);
  CHECK(pressure(EosSpec::polytropic(2.0), 2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(pressure(EosSpec::chaplygin(-2.0), 2.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(pressure(EosSpec::logarithmic(1.0, 3.0), 1.0) == doctest::Approx(3.0));  // K shift
  CHECK_THROWS_AS(pressure(EosSpec::logarithmic(), 0.0), NonpositiveDensity);
  CHECK_THROWS_AS(pressure(EosSpec::logarithmic(), -1.0), NonpositiveDensity);
}

TEST_CASE("first derivative") {
  CHECK(dp_drho(EosSpec::logarithmic(), 4.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(dp_drho(EosSpec::polytropic(2.0), 3.0) == doctest::Approx(9.0).epsilon(1e-14));

  // finite-difference oracle at rho = 1.7, step 1e-5
  for (const EosSpec& eos : {EosSpec::logarithmic(), EosSpec::polytropic(2.0),
                             EosSpec::chaplygin(-1.5), EosSpec::general_power(-0.5)}) {
    const double fd = central_fd(&pressure, eos, 1.7, 1e-5);
    CHECK(dp_drho(eos, 1.7) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("second derivative") {
  CHECK(d2p_drho2(EosSpec::logarithmic(), 2.0) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(d2p_drho2(EosSpec::polytropic(2.0), 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  for (const EosSpec& eos : {EosSpec::logarithmic(), EosSpec::polytropic(2.0),
                             EosSpec::chaplygin(-1.5)}) {
    const double fd = central_fd(&dp_drho, eos, 1.7, 1e-5);
    CHECK(d2p_drho2(eos, 1.7) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("family membership residual") {
  CHECK(ode_residual(EosSpec::polytropic(2.0), 5.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ode_residual(EosSpec::logarithmic(), 3.0) == doctest::Approx(0.0).epsilon(1e-13));

  // the misbranching label A = +1 on the logarithmic law: residual -2 rho
  EosSpec mislabeled = EosSpec::logarithmic();
  mislabeled.A = 1.0;
  CHECK(ode_residual(mislabeled, 3.0) == doctest::Approx(-6.0).epsilon(1e-14));

  // zero curvature: p' = K1 with A = 0 has no usable residual
  CHECK_THROWS_AS(ode_residual(EosSpec::general_power(0.0), 2.0), ZeroCurvature);
}

TEST_CASE("sound speed bound") {
  const EosSpec eos = EosSpec::logarithmic();
  CHECK(subluminal_check(eos, 1.0));   // boundary: p'(rho_star) = c^2
  CHECK(!subluminal_check(eos, 0.5));  // p' = 2 > 1
  CHECK(subluminal_check(eos, 10.0));  // p' = 0.1
}

TEST_CASE("density lower bound and enthalpy positivity") {
  const AdmissibleWindow w = lemma1_bounds(EosSpec::logarithmic());
  CHECK(w.rho_star == 1.0);
  CHECK(enthalpy_density(EosSpec::logarithmic(), w.rho_star) == doctest::Approx(1.0));

  CHECK_THROWS_AS(lemma1_bounds(EosSpec::logarithmic(1.0, 0.0, 2.0)),
                  AssumptionViolation);  // c^2/e ~ 1.47 > K1 = 1
  CHECK_THROWS_AS(lemma1_bounds(EosSpec::logarithmic(0.3)), AssumptionViolation);
  CHECK_THROWS_AS(lemma1_bounds(EosSpec::polytropic(2.0)), AssumptionViolation);

  // positivity across the window, 1000 samples
  const EosSpec eos = EosSpec::logarithmic();
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double rho = rng.uniform(w.rho_star, 1000.0);
    CHECK(enthalpy_density(eos, rho) > 0.0);
  }
}

TEST_CASE("derivatives match finite differences across the window") {
  SplitMix64 rng(5);
  for (const EosSpec& eos : {EosSpec::logarithmic(), EosSpec::polytropic(0.5),
                             EosSpec::chaplygin(-2.0)}) {
    for (int i = 0; i < 200; ++i) {
      const double rho = std::exp(rng.uniform(std::log(1.0), std::log(1000.0)));
      CHECK(dp_drho(eos, rho) > 0.0);
      const double fd1 = central_fd(&pressure, eos, rho, 1e-5 * rho);
      CHECK(std::abs(fd1 - dp_drho(eos, rho)) <= 1e-7 * std::abs(dp_drho(eos, rho)));
      const double fd2 = central_fd(&dp_drho, eos, rho, 1e-4 * rho);
      CHECK(std::abs(fd2 - d2p_drho2(eos, rho)) <= 1e-6 * std::abs(d2p_drho2(eos, rho)));
      CHECK(std::abs(ode_residual(eos, rho)) <= 1e-12 * rho);
    }
  }
}

TEST_CASE("sign behavior with K = 0") {
  CHECK(pressure(EosSpec::logarithmic(), 2.0) > 0.0);
  CHECK(pressure(EosSpec::logarithmic(), 0.5) < 0.0);
  CHECK(pressure(EosSpec::polytropic(2.0), 0.5) > 0.0);
  CHECK(pressure(EosSpec::polytropic(2.0), 2.0) > 0.0);
  CHECK(pressure(EosSpec::chaplygin(-2.0), 0.5) < 0.0);
  CHECK(pressure(EosSpec::chaplygin(-2.0), 2.0) < 0.0);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(EosSpec::polytropic(-1.0), ConfigError);
  CHECK_THROWS_AS(EosSpec::chaplygin(-0.5), ConfigError);
  CHECK_THROWS_AS(EosSpec::general_power(-1.0), ConfigError);
  CHECK_THROWS_AS(EosSpec::logarithmic(0.0), ConfigError);   // K1 > 0
  CHECK_THROWS_AS(EosSpec::logarithmic(1.0, 0.0, 0.0), ConfigError);  // c > 0
}

TEST_CASE("json layout round-trips with exact field names") {
  const EosSpec eos = EosSpec::chaplygin(-1.5, 2.0, 0.25, 3.0);
  nlohmann::json j = eos;
  CHECK(j.at("family") == "chaplygin");
  CHECK(j.at("A") == -1.5);
  CHECK(j.at("K1") == 2.0);
  CHECK(j.at("K") == 0.25);
  CHECK(j.at("c") == 3.0);
  const EosSpec back = j.get<EosSpec>();
  CHECK(back.family == eos.family);
  CHECK(back.A == eos.A);
  CHECK(back.K1 == eos.K1);
  CHECK(back.K == eos.K);
  CHECK(back.c == eos.c);

  CHECK_THROWS_AS(nlohmann::json::parse(R"({"family":"nope","A":1,"K1":1,"K":0,"c":1})")
                      .get<EosSpec>(),
                  ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"family":"logarithmic"})").get<EosSpec>(),
                  ConfigError);
}
