#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "gauge.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::vector<double> linspace(double lo, double hi, std::size_t cells) {
  std::vector<double> out(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
  out.back() = hi;
  return out;
}

/// Cell knots on [lo, hi] plus any extra points strictly inside.
std::vector<double> cell_knots(double lo, double hi, std::size_t cells, const std::vector<double>& extra) {
  std::vector<double> pts = linspace(lo, hi, cells);
  for (double x : extra) {
    if (x > lo && x < hi) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<double> jump_points(const MeasureSpec& nu, const MeasureSpec& w) {
  std::vector<double> pts = nu.breakpoints();
  for (const Atom& atom : nu.atoms()) pts.push_back(atom.location);
  pts.insert(pts.end(), w.breakpoints().begin(), w.breakpoints().end());
  return pts;
}

double cell_average(const Integrand& g, double lo, double hi, const QuadratureConfig& cfg) {
  const double v = integrate(g, lo, hi, cfg).value;
  if (!std::isfinite(v)) fail(ErrorCode::NonIntegrableIntegrand, "extremal integrand is not integrable on a cell");
  return v / (hi - lo);
}

}  // namespace

void PoincareInstance::validate() const {
  if (mu.a() != nu.a() || mu.a() != w.a() || mu.b() != nu.b() || mu.b() != w.b())
    fail(ErrorCode::InvalidArgument, "mu, nu and w must share the interval [a, b]");
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must satisfy 1 <= p < inf");
  if (!(nu.total_mass() > 0.0)) fail(ErrorCode::ZeroTotalMass, "nu[a, b] must be positive");
}

RatioRecord poincare_ratio(const PoincareInstance& inst, const PiecewiseLinearFunction& f, const std::string& id,
                           const QuadratureConfig& cfg) {
  RatioRecord r;
  r.id = id;
  const double avg = weighted_average(f, inst.nu, cfg);
  r.lhs = gauge_norm(f.plus(-avg), inst.phi, inst.mu, cfg);

  const auto& knots = f.knots();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.segments(); ++i) {
    const double s = std::abs(f.slope(i));
    if (s == 0.0) continue;
    const double wm = inst.w.density_mass(knots[i], knots[i + 1]);
    acc += (inst.p == 1.0 ? s : std::pow(s, inst.p)) * wm;
  }
  r.rhs = inst.p == 1.0 ? acc : std::pow(acc, 1.0 / inst.p);

  if (r.rhs == 0.0) {
    const double tol = 1e-12 * (1.0 + f.max_abs());
    if (r.lhs > tol)
      fail(ErrorCode::DegenerateTestFunction,
           "test function '" + id + "' has zero derivative norm but a nonzero deviation");
    r.ratio = 0.0;
    return r;
  }
  r.ratio = r.lhs / r.rhs;
  return r;
}

PiecewiseLinearFunction extremal_p1(const PoincareInstance& inst, double alpha, double eps, double n,
                                    const QuadratureConfig& cfg) {
  inst.validate();
  const double a = inst.mu.a();
  const double b = inst.mu.b();
  if (!(alpha > a && alpha < b)) fail(ErrorCode::BadAlpha, "alpha must lie strictly inside (a, b)");
  if (!(eps > 0.0 && eps < std::min(alpha - a, b - alpha)))
    fail(ErrorCode::InvalidArgument, "eps must satisfy 0 < eps < min(alpha - a, b - alpha)");
  if (!(n > 0.0)) fail(ErrorCode::InvalidArgument, "regularization n must be positive");
  if (inst.nu.point_mass(alpha) > 0.0) fail(ErrorCode::BadAlpha, "alpha is an atom of nu");
  const double left_mass = inst.nu.interval_mass(a, alpha);
  if (!(left_mass > 0.0)) fail(ErrorCode::BadAlpha, "nu[a, alpha] = 0");
  const double c = inst.nu.interval_mass(alpha, b) / left_mass;

  const Integrand inv_wn = [&](double t) { return 1.0 / (inst.w.density(t) + 1.0 / n); };
  const std::size_t half_cells = kExtremalKnots / 2;
  const std::vector<double> extra = inst.w.breakpoints();
  const std::vector<double> left = cell_knots(alpha - eps, alpha, half_cells, extra);
  const std::vector<double> right = cell_knots(alpha, alpha + eps, half_cells, extra);

  std::vector<double> knots{a};
  std::vector<double> slopes{0.0};
  double drop = 0.0;
  for (std::size_t i = 0; i + 1 < left.size(); ++i) {
    const double s = c / eps * cell_average(inv_wn, left[i], left[i + 1], cfg);
    knots.push_back(left[i]);
    slopes.push_back(s);
    drop += s * (left[i + 1] - left[i]);
  }
  for (std::size_t i = 0; i + 1 < right.size(); ++i) {
    knots.push_back(right[i]);
    slopes.push_back(cell_average(inv_wn, right[i], right[i + 1], cfg) / eps);
  }
  knots.push_back(alpha + eps);
  slopes.push_back(0.0);
  knots.push_back(b);
  return PiecewiseLinearFunction::from_slopes(std::move(knots), -drop, slopes);
}

double extremal_p1_limit(const PoincareInstance& inst, double alpha, double n) {
  inst.validate();
  const double a = inst.mu.a();
  const double b = inst.mu.b();
  const double left_mass = inst.nu.interval_mass(a, alpha);
  if (!(left_mass > 0.0)) fail(ErrorCode::BadAlpha, "nu[a, alpha] = 0");
  const double c = inst.nu.interval_mass(alpha, b) / left_mass;
  const StepFunction combo({a, alpha, b}, {c, 1.0}, {c, c + 1.0, 1.0});
  const double wn = inst.w.density(alpha) + 1.0 / n;
  return gauge_norm(combo, inst.phi, inst.mu) / wn;
}

ExtremalPair extremal_p(const PoincareInstance& inst, double alpha, double n, const QuadratureConfig& cfg) {
  inst.validate();
  if (!(inst.p > 1.0)) fail(ErrorCode::InvalidArgument, "extremal_p needs p > 1");
  const double a = inst.mu.a();
  const double b = inst.mu.b();
  if (!(alpha > a && alpha < b)) fail(ErrorCode::BadAlpha, "alpha must lie strictly inside (a, b)");
  if (!(n > 0.0)) fail(ErrorCode::InvalidArgument, "regularization n must be positive");
  const double pp = ConjugateExponent::of(inst.p).p_prime;
  const MeasureSpec& nu = inst.nu;
  const MeasureSpec& w = inst.w;

  const auto wn_pow = [&](double t) { return std::pow(w.density(t) + 1.0 / n, 1.0 - pp); };
  const Integrand g1 = [&](double t) { return std::pow(nu.interval_mass(a, t), pp - 1.0) * wn_pow(t); };
  const Integrand g2 = [&](double t) { return std::pow(nu.interval_mass(t, b), pp - 1.0) * wn_pow(t); };
  const Integrand h1 = [&](double t) { return std::pow(nu.interval_mass(a, t), pp) * wn_pow(t); };
  const Integrand h2 = [&](double t) { return std::pow(nu.interval_mass(t, b), pp) * wn_pow(t); };

  const std::vector<double> extra = jump_points(nu, w);
  const std::vector<double> k1 = cell_knots(a, alpha, kExtremalKnots - 1, extra);
  const std::vector<double> k2 = cell_knots(alpha, b, kExtremalKnots - 1, extra);

  std::vector<double> s1;
  double i1 = 0.0;
  for (std::size_t i = 0; i + 1 < k1.size(); ++i) {
    s1.push_back(cell_average(g1, k1[i], k1[i + 1], cfg));
    i1 += integrate(h1, k1[i], k1[i + 1], cfg).value;
  }
  std::vector<double> knots1 = k1;
  knots1.push_back(b);
  s1.push_back(0.0);

  std::vector<double> s2{0.0};
  double i2 = 0.0;
  std::vector<double> knots2{a};
  for (std::size_t i = 0; i + 1 < k2.size(); ++i) {
    s2.push_back(cell_average(g2, k2[i], k2[i + 1], cfg));
    i2 += integrate(h2, k2[i], k2[i + 1], cfg).value;
    knots2.push_back(k2[i]);
  }
  knots2.push_back(b);
  if (!std::isfinite(i1) || !std::isfinite(i2))
    fail(ErrorCode::NonIntegrableIntegrand, "inner integral diverges at alpha: the backward constant is infinite");

  const double log_total = std::log(nu.total_mass());
  const auto bound = [&](double integral, double mass) {
    if (!(integral > 0.0) || !(mass > 0.0)) return 0.0;
    return std::exp(std::log(integral) / pp - log_total - inst.phi.log_inverse(-std::log(mass)));
  };
  ExtremalPair out{PiecewiseLinearFunction::from_slopes(std::move(knots1), 0.0, s1),
                   PiecewiseLinearFunction::from_slopes(std::move(knots2), 0.0, s2), 0.0, 0.0};
  out.lower_bound_1 = bound(i1, inst.mu.interval_mass(alpha, b));
  out.lower_bound_2 = bound(i2, inst.mu.interval_mass(a, alpha));
  return out;
}

std::vector<ExtremalRow> extremal_scan(const PoincareInstance& inst, const std::vector<double>& alphas, double n,
                                       unsigned workers, const QuadratureConfig& cfg) {
  std::vector<ExtremalRow> rows(alphas.size());
  parallel_for(alphas.size(), workers, [&](std::size_t i) {
    const ExtremalPair pair = extremal_p(inst, alphas[i], n, cfg);
    ExtremalRow& row = rows[i];
    row.alpha = alphas[i];
    row.lower_bound_1 = pair.lower_bound_1;
    row.lower_bound_2 = pair.lower_bound_2;
    row.ratio_1 = poincare_ratio(inst, pair.f1, "f1", cfg).ratio;
    row.ratio_2 = poincare_ratio(inst, pair.f2, "f2", cfg).ratio;
  });
  return rows;
}

std::vector<PiecewiseLinearFunction> random_family(std::uint64_t seed, std::size_t count, std::size_t knot_budget,
                                                   double a, double b, const FamilyOptions& opt) {
  if (count == 0 || knot_budget == 0) fail(ErrorCode::InvalidArgument, "count and knot_budget must be >= 1");
  if (!(b > a)) fail(ErrorCode::InvalidArgument, "random_family needs a < b");
  std::mt19937_64 rng(seed);
  std::vector<PiecewiseLinearFunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t segments = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(knot_budget));
    const std::size_t m = std::min(segments, knot_budget);
    const bool spike = opt.spikes && m > 1 && k % 4 == 3;
    const bool toward_a = uniform01(rng) < 0.5;
    std::vector<double> knots{a, b};
    for (std::size_t i = 1; i < m; ++i) {
      double x;
      if (spike) {
        // distance 10^{-3u} (b - a) from the endpoint
        const double d = (b - a) * std::pow(10.0, -3.0 * uniform01(rng));
        x = toward_a ? a + d : b - d;
      } else {
        x = uniform(rng, a, b);
      }
      if (x > a && x < b) knots.push_back(x);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<double> slopes(knots.size() - 1);
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      double s = uniform(rng, -1.0, 1.0);
      if (spike) s *= std::sqrt((b - a) / (knots[i + 1] - knots[i]));
      slopes[i] = s;
    }
    const double start = uniform(rng, -1.0, 1.0);
    out.push_back(PiecewiseLinearFunction::from_slopes(std::move(knots), start, slopes));
  }
  return out;
}

CertificationReport certify_instance(const PoincareInstance& inst, const std::vector<NamedFunction>& family,
                                     const CertifyOptions& opt) {
  inst.validate();
  CertificationReport rep;
  rep.p = inst.p;
  rep.phi_label = inst.phi.label();
  ScanOptions scan = opt.scan;
  scan.workers = std::max(scan.workers, opt.workers);

  if (inst.p == 1.0) {
    rep.k1 = k1_phi(inst.mu, inst.nu, inst.w, inst.phi, scan);
    rep.bound = 2.0 * rep.k1->value;
    rep.bound_kind = "2*K1";
  } else {
    try {
      require_forward_hypotheses(inst.phi, inst.p);
    } catch (const Error& e) {
      rep.hypotheses_ok = false;
      rep.hypothesis_note = e.what();
    }
    if (inst.phi.strictly_increasing_on_nonneg()) {
      ScanOptions inner = scan;
      inner.check_hypotheses = false;
      rep.k_backward = k_p_phi_backward(inst.mu, inst.nu, inst.w, inst.p, inst.phi, inner);
      if (rep.hypotheses_ok) {
        rep.k_forward = k_p_phi_forward(inst.mu, inst.nu, inst.w, inst.p, inst.phi, inner);
        rep.c0 = c0_of_phi(inst.phi);
        rep.bound = rep.c0 * rep.k_forward->value;
        rep.bound_kind = "C0*K_forward";
      }
    }
  }
  if (std::isfinite(rep.bound)) rep.tolerance = std::max(1e-6, 1e-8 * rep.bound);

  rep.records.resize(family.size());
  std::vector<std::string> errors(family.size());
  parallel_for(family.size(), opt.workers, [&](std::size_t i) {
    try {
      rep.records[i] = poincare_ratio(inst, family[i].f, family[i].id, opt.quad);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateTestFunction) throw;
      rep.records[i].id = family[i].id;
      errors[i] = e.what();
    }
  });
  rep.within_bound.assign(family.size(), true);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const RatioRecord& r = rep.records[i];
    if (!errors[i].empty()) {
      rep.within_bound[i] = false;
      rep.violations.push_back(errors[i]);
      continue;
    }
    if (i == 0 || r.ratio > rep.max_ratio) {
      rep.max_ratio = r.ratio;
      rep.max_ratio_id = r.id;
    }
    if (!std::isnan(rep.bound) && !(r.ratio <= rep.bound + rep.tolerance)) {
      rep.within_bound[i] = false;
      rep.violations.push_back("'" + r.id + "' ratio " + std::to_string(r.ratio) + " exceeds " + rep.bound_kind +
                               " = " + std::to_string(rep.bound));
    }
  }
  return rep;
}

}  // namespace orlicz
