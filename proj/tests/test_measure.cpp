#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "measure.hpp"
#include "quadrature.hpp"

using namespace orlicz;

TEST_CASE("adaptive quadrature on smooth and kinked integrands") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0).value ==
        doctest::Approx(0.045 + 0.245).epsilon(1e-10));
  CHECK(integrate([](double x) { return x * x; }, 1.0, 0.0).value == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("log-space integration across hundreds of decades") {
  // int_0^1 e^{-1000 x} dx = (1 - e^{-1000}) / 1000
  CHECK(log_integrate_exp([](double x) { return -1000.0 * x; }, 0.0, 1.0) ==
        doctest::Approx(-std::log(1000.0)).epsilon(1e-10));
  // int_1^2 e^{5000 x} dx, far above the double range
  const double expect = 10000.0 + std::log1p(-std::exp(-5000.0)) - std::log(5000.0);
  CHECK(log_integrate_exp([](double x) { return 5000.0 * x; }, 1.0, 2.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("endpoint integration toward a singularity") {
  // int_0^1 x^{-1/2} dx = 2
  const auto lf = [](double x) { return -0.5 * std::log(x); };
  CHECK(std::exp(log_integrate_exp_toward(lf, 0.0, 1.0, {})) == doctest::Approx(2.0).epsilon(1e-8));
  // int_0^1 x^{-1} dx diverges
  CHECK(std::isinf(log_integrate_exp_toward([](double x) { return -std::log(x); }, 0.0, 1.0, {})));
}

TEST_CASE("lebesgue measure with atoms") {
  const MeasureSpec m = MeasureSpec::lebesgue(0.0, 2.0, {{0.5, 0.25}, {2.0, 1.0}});
  CHECK(m.total_mass() == doctest::Approx(3.25));
  CHECK(m.interval_mass(0.0, 0.5) == doctest::Approx(0.75));
  CHECK(m.interval_mass(0.5, 1.0) == doctest::Approx(0.75));
  CHECK(m.point_mass(0.5) == doctest::Approx(0.25));
  CHECK_THROWS_AS(m.interval_mass(1.0, 0.5), Error);
}

TEST_CASE("power and piecewise constant densities") {
  const MeasureSpec pw = MeasureSpec::power(0.0, 1.0, -0.5);
  CHECK(pw.interval_mass(0.0, 0.25) == doctest::Approx(1.0));
  CHECK(pw.quadrature_density_mass(0.0, 0.25) == doctest::Approx(1.0).epsilon(1e-8));
  const MeasureSpec pc = MeasureSpec::piecewise_constant({0.0, 1.0, 3.0}, {2.0, 0.5});
  CHECK(pc.interval_mass(0.5, 2.0) == doctest::Approx(1.5));
  CHECK(pc.density(2.0) == doctest::Approx(0.5));
}

TEST_CASE("infinitely degenerate weight") {
  const MeasureSpec w = MeasureSpec::expdeg(0.0, 1.0);
  CHECK(w.interval_mass(0.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w.density(1e-3) == 0.0);
  for (double x : {0.05, 0.3, 0.7})
    CHECK(w.interval_mass(0.0, x) + w.interval_mass(x, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  // log masses stay finite where the masses underflow
  CHECK(w.log_interval_mass(0.0, 1e-3) == doctest::Approx(-1e6).epsilon(1e-14));
  CHECK(w.quadrature_density_mass(0.2, 0.9) == doctest::Approx(w.density_mass(0.2, 0.9)).epsilon(1e-9));
}

TEST_CASE("custom densities are tabulated") {
  const MeasureSpec m = MeasureSpec::from_density(0.0, 1.0, [](double x) { return 3.0 * x * x; });
  CHECK(m.interval_mass(0.0, 0.5) == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-9));
  const MeasureSpec sing = MeasureSpec::from_density(
      0.0, 1.0, [](double x) { return 0.5 / std::sqrt(x); }, {}, {}, true);
  CHECK(sing.interval_mass(0.0, 0.25) == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("integration against a measure and weighted averages") {
  const MeasureSpec m = MeasureSpec::lebesgue(0.0, 1.0, {{1.0, 1.0}});
  const PiecewiseLinearFunction f({0.0, 1.0}, {0.0, 1.0});
  CHECK(integrate_against(GeneralFunction::from(f), m) == doctest::Approx(1.5));
  CHECK(weighted_average(f, m) == doctest::Approx(0.75));
  CHECK_THROWS_AS(weighted_average(f, MeasureSpec::atoms_only(0.0, 1.0, {})), Error);
}
