#include <cmath>

#include "doctest.h"
#include "errors.hpp"
#include "verify.hpp"

using namespace orlicz;

namespace {
const MeasureSpec leb = MeasureSpec::lebesgue(0.0, 1.0);
}

TEST_CASE("Poincare ratio of the identity") {
  const PoincareInstance inst{leb, leb, leb, 1.0, YoungFunction::power(1.0)};
  const RatioRecord r = poincare_ratio(inst, PiecewiseLinearFunction({0.0, 1.0}, {0.0, 1.0}));
  CHECK(r.lhs == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(r.rhs == doctest::Approx(1.0));
  CHECK(r.ratio == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("constant functions have ratio zero") {
  const PoincareInstance inst{leb, leb, leb, 2.0, YoungFunction::power(2.0)};
  CHECK(poincare_ratio(inst, PiecewiseLinearFunction({0.0, 1.0}, {3.0, 3.0})).ratio == 0.0);
}

TEST_CASE("p = 1 extremal functions approach the per-alpha supremand") {
  const PoincareInstance inst{leb, leb, leb, 1.0, YoungFunction::power(1.0)};
  const PiecewiseLinearFunction f = extremal_p1(inst, 0.5, 1e-3);
  CHECK(f(0.0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(f(1.0) == doctest::Approx(1.0).epsilon(1e-6));
  const double ratio = poincare_ratio(inst, f).ratio;
  CHECK(ratio == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(ratio <= 2.0 * 0.5 + 1e-6);
  // the deviation norm tends to (1/w(alpha)) || chi_[a,alpha] + chi_[alpha,b] ||
  CHECK(extremal_p1_limit(inst, 0.5) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(extremal_p1(inst, 0.5, 0.6), Error);
}

TEST_CASE("alpha on an atom of nu is rejected") {
  const MeasureSpec nu = MeasureSpec::lebesgue(0.0, 1.0, {{0.5, 0.1}});
  const PoincareInstance inst{leb, nu, leb, 1.0, YoungFunction::power(1.0)};
  CHECK_THROWS_AS(extremal_p1(inst, 0.5, 1e-3), Error);
}

TEST_CASE("p > 1 extremal functions") {
  const PoincareInstance inst{leb, leb, leb, 2.0, YoungFunction::power(2.0)};
  const ExtremalPair pair = extremal_p(inst, 0.5);
  // f1' = nu[0, t] = t on [0, 1/2], flat afterwards
  CHECK(pair.f1(0.25) == doctest::Approx(0.03125).epsilon(1e-6));
  CHECK(pair.f1(0.9) == doctest::Approx(0.125).epsilon(1e-6));
  // (int_0^{1/2} z^2 dz)^{1/2} / Phi^{-1}(2)
  CHECK(pair.lower_bound_1 == doctest::Approx(std::sqrt(1.0 / 24.0) / std::sqrt(2.0)).epsilon(1e-8));
  CHECK(pair.lower_bound_2 == doctest::Approx(pair.lower_bound_1).epsilon(1e-8));
}

TEST_CASE("random families are reproducible") {
  const auto a = random_family(42, 20, 8, 0.0, 1.0);
  const auto b = random_family(42, 20, 8, 0.0, 1.0);
  const auto c = random_family(43, 20, 8, 0.0, 1.0);
  REQUIRE(a.size() == 20);
  bool any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].knots() == b[i].knots());
    CHECK(a[i].values() == b[i].values());
    CHECK(a[i].segments() <= 8);
    CHECK(a[i].knots().front() == 0.0);
    CHECK(a[i].knots().back() == 1.0);
    any_diff = any_diff || a[i].values() != c[i].values();
  }
  CHECK(any_diff);
}

TEST_CASE("certification on the Lebesgue triple") {
  const PoincareInstance inst{leb, leb, leb, 1.0, YoungFunction::power(1.0)};
  std::vector<NamedFunction> fam;
  const auto fs = random_family(3, 40, 12, 0.0, 1.0);
  for (std::size_t i = 0; i < fs.size(); ++i) fam.push_back({"r" + std::to_string(i), fs[i]});
  CertifyOptions opt;
  opt.workers = 3;
  const CertificationReport rep = certify_instance(inst, fam, opt);
  CHECK(rep.pass());
  CHECK(rep.bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.max_ratio <= rep.bound);
  CHECK(rep.records.size() == fam.size());
}

TEST_CASE("certification with logbump reports both constants") {
  const PoincareInstance inst{leb, leb, leb, 2.0, YoungFunction::logbump(2.0, 1.0)};
  std::vector<NamedFunction> fam{{"x", PiecewiseLinearFunction({0.0, 1.0}, {0.0, 1.0})}};
  const CertificationReport rep = certify_instance(inst, fam);
  CHECK(rep.hypotheses_ok);
  CHECK(rep.k_forward.has_value());
  CHECK(rep.k_backward.has_value());
  CHECK(rep.k_backward->value <= rep.k_forward->value * (1.0 + 1e-9));
  CHECK(rep.pass());
}

TEST_CASE("missing hypotheses leave no bound") {
  const PoincareInstance inst{leb, leb, leb, 2.0, YoungFunction::exponential()};
  std::vector<NamedFunction> fam{{"x", PiecewiseLinearFunction({0.0, 1.0}, {0.0, 1.0})}};
  const CertificationReport rep = certify_instance(inst, fam);
  CHECK_FALSE(rep.hypotheses_ok);
  CHECK(std::isnan(rep.bound));
  CHECK(rep.pass());
}
