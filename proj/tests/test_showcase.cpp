#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "showcase.hpp"

using namespace orlicz;

TEST_CASE("example weight") {
  const MeasureSpec w = example_weight();
  CHECK(w.interval_mass(0.0, 1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-14));
  CHECK(w.density(1e-4) == 0.0);
  CHECK(w.interval_mass(0.0, 0.4) + w.interval_mass(0.4, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("example config invariants") {
  ExampleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.epsilon() == doctest::Approx(0.45));
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.alpha = 1.0;
  cfg.q = 2.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.q = 2.5;
  cfg.eps = 0.3;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("g(t0) grows without bound as x -> 0") {
  ExampleConfig cfg;
  const double e = cfg.epsilon();
  CHECK(log_g_t0(cfg, e, 1e-2) > log_g_t0(cfg, e, 1e-1));
  // (eps - 1/q) / x^2 dominates
  CHECK(log_g_t0(cfg, e, 1e-3) == doctest::Approx(-1.0 + 0.05e6).epsilon(1e-9));
}

TEST_CASE("three-part report") {
  ExampleConfig cfg;
  cfg.workers = 4;
  const ExampleReport r = run_example(cfg);
  CHECK(r.k_pp.classification == Classification::FiniteStable);
  CHECK(r.k_pq.classification == Classification::Diverging);
  CHECK(r.k_phi.classification == Classification::FiniteStable);
  CHECK(r.submultiplicative.pass());
  CHECK(r.lambda_convexity.pass());
  CHECK(r.log_growth > std::log(1e6));
  REQUIRE_FALSE(r.overlay.empty());
  for (const OverlayPoint& o : r.overlay) CHECK(o.holds);
  CHECK(r.consistent());
  // Phi^{-1}(T) ~ (T / ln(T)^alpha)^{1/p}
  const InverseAsymptotic& last = r.inverse_asymptotics.back();
  CHECK(std::abs(last.log_inverse - last.log_approximation) < 1e-4 * last.log_inverse);
}

TEST_CASE("split of the tail integral") {
  ExampleConfig cfg;
  const SplitReport s = split_integral_check(cfg);
  CHECK(s.pass());
  CHECK(s.rows.size() == 13);
  CHECK(s.rows.front().x == doctest::Approx(0.1));
  CHECK(s.rows.back().x == doctest::Approx(1e-3));
  const SplitRow row = split_integral_row(cfg, 0.1);
  CHECK(row.delta == doctest::Approx(std::pow(0.1, 2.0 / 3.0)));
  CHECK(row.log_i <= row.log_i_bound);
  CHECK(row.log_ii <= row.log_ii_bound);
  CHECK_THROWS_AS(split_integral_row(cfg, 1.5), Error);
}
