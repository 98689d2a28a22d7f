#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "young.hpp"

using namespace orlicz;

TEST_CASE("power young function and its inverse") {
  const YoungFunction phi = YoungFunction::power(3.0, 2.0);
  CHECK(phi(2.0) == doctest::Approx(16.0));
  CHECK(phi(-2.0) == doctest::Approx(16.0));
  CHECK(phi.inverse(16.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(phi.log_inverse(std::log(16.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(YoungFunction::power(0.5), Error);
}

TEST_CASE("logbump branches meet continuously at e^{2 alpha}") {
  const double alpha = 1.5;
  const YoungFunction phi = YoungFunction::logbump(2.0, alpha);
  const double t = std::exp(2.0 * alpha);
  CHECK(phi(t * (1 - 1e-12)) == doctest::Approx(phi(t)).epsilon(1e-9));
  CHECK(phi.log_eval(std::log(50.0)) == doctest::Approx(std::log(phi(50.0))).epsilon(1e-13));
  CHECK(phi.log_eval(std::log(0.3)) == doctest::Approx(std::log(phi(0.3))).epsilon(1e-13));
}

TEST_CASE("log inverse reaches far beyond double range") {
  const YoungFunction phi = YoungFunction::logbump(2.0, 1.0);
  // Phi^{-1}(e^L) ~ (e^L / L)^{1/2} for large L
  const double L = 1e6;
  const double s = phi.log_inverse(L);
  CHECK(phi.log_eval(s) == doctest::Approx(L).epsilon(1e-12));
}

TEST_CASE("exponential young function") {
  const YoungFunction phi = YoungFunction::exponential();
  CHECK(phi(1.0) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(phi.log_eval(std::log(100.0)) == doctest::Approx(100.0 + std::log1p(-std::exp(-100.0))));
  CHECK(phi.inverse(std::exp(3.0) - 1.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("piecewise linear young function with a cap") {
  const YoungFunction phi = YoungFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 1.0, 3.0}, 4.0);
  CHECK(phi(0.5) == doctest::Approx(0.5));
  CHECK(phi(1.5) == doctest::Approx(2.0));
  CHECK(phi(3.0) == doctest::Approx(5.0));
  CHECK(std::isinf(phi(4.5)));
  CHECK_FALSE(phi.finite_on_reals());
}

TEST_CASE("complementary functions against closed forms and mpmath values") {
  // t^2/2 is self-dual
  const ComplementaryFunction half_square(YoungFunction::power(2.0, 0.5));
  for (double s : {1.0, 2.0, 4.0}) CHECK(half_square(s) == doctest::Approx(0.5 * s * s).epsilon(1e-10));

  // e^t - 1: Psi(s) = s ln s - s + 1 for s >= 1, 0 below
  const ComplementaryFunction ex(YoungFunction::exponential());
  CHECK(ex(0.5) == doctest::Approx(0.0));
  CHECK(ex(2.0) == doctest::Approx(0.38629436111989061883).epsilon(1e-10));
  CHECK(ex(10.0) == doctest::Approx(14.02585092994045684).epsilon(1e-10));

  // tools/oracles.py
  const ComplementaryFunction lb(YoungFunction::logbump(2.0, 1.0));
  CHECK(lb(1.0) == doctest::Approx(0.125).epsilon(1e-10));
  CHECK(lb(20.0) == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(lb(40.0) == doctest::Approx(187.02881616802102526).epsilon(1e-9));
  CHECK(lb(100.0) == doctest::Approx(891.52599153670080372).epsilon(1e-9));

  // |t|: Psi is 0 on [0, 1] and infinite beyond
  const ComplementaryFunction abs_t(YoungFunction::power(1.0));
  CHECK(abs_t(0.7) == doctest::Approx(0.0));
  CHECK(std::isinf(abs_t.as_young()(1.5)));
}

TEST_CASE("submultiplicativity certificates") {
  const std::vector<double> grid = log_spaced(1e-3, 1e3, 64);
  CHECK(certify_submultiplicative(YoungFunction::power(2.5), grid).pass());
  CHECK(certify_submultiplicative(YoungFunction::logbump(2.0, 1.0), default_certification_grid()).pass());
  // e^t - 1 fails: Phi(2 * 2) > Phi(2)^2
  const SubmultiplicativityReport bad = certify_submultiplicative(YoungFunction::exponential(), grid);
  CHECK_FALSE(bad.pass());
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations.front().phi_st > bad.violations.front().phi_s_phi_t);
}

TEST_CASE("lambda transform convexity") {
  CHECK(lambda_transform(YoungFunction::logbump(2.0, 1.0), 2.0).certificate.pass());
  CHECK(lambda_transform(YoungFunction::power(3.0), 2.0).lambda(4.0) == doctest::Approx(8.0));
  // |t|^{1.5} composed with t^{1/2} is concave
  CHECK_THROWS_AS(lambda_transform(YoungFunction::power(1.5), 2.0), ConvexityViolation);
}

TEST_CASE("conjugate exponent") {
  CHECK(ConjugateExponent::of(2.0).p_prime == doctest::Approx(2.0));
  CHECK(ConjugateExponent::of(3.0).p_prime == doctest::Approx(1.5));
  CHECK_THROWS_AS(ConjugateExponent::of(1.0), Error);
}
