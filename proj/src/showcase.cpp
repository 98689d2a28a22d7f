#include "showcase.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "errors.hpp"
#include "quadrature.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSlack = 1e-9;

// log of int_lo^hi t^k dt, k > -1
double log_power_integral(double k, double lo, double hi) {
  const double e = k + 1.0;
  return e * std::log(hi) + std::log(-std::expm1(e * (std::log(lo) - std::log(hi)))) - std::log(e);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

ScanGrid ExampleConfig::default_grid() {
  ScanGrid g;
  g.policy = GridPolicy::Union;
  g.uniform_points = 256;
  g.geometric_points = 512;
  g.geometric_min_fraction = 1e-3;
  return g;
}

void ExampleConfig::validate() const {
  if (!(b > 0.0) || !std::isfinite(b)) fail(ErrorCode::Config, "example: b must be positive");
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::Config, "example: p must exceed 1");
  if (!(q > p) || !std::isfinite(q)) fail(ErrorCode::Config, "example: q must exceed p");
  if (!(alpha > 0.0 && alpha < 0.75 * p)) fail(ErrorCode::Config, "example: alpha must lie in (0, 3p/4)");
  if (eps && !(*eps > 1.0 / q && *eps < 1.0 / p)) fail(ErrorCode::Config, "example: eps must lie in (1/q, 1/p)");
}

double ExampleConfig::epsilon() const { return eps ? *eps : 0.5 * (1.0 / q + 1.0 / p); }

MeasureSpec example_weight(double b) { return MeasureSpec::expdeg(0.0, b); }

double log_g_t0(const ExampleConfig& cfg, double eps, double x) {
  const double e1 = -1.0 / (cfg.b * cfg.b);
  const double e2 = -eps * cfg.p / (x * x);
  if (!(e2 < e1)) return -kInf;
  // log(e^{e1} - e^{e2}) + (eps - 1/q) / x^2
  return e1 + std::log(-std::expm1(e2 - e1)) + (eps - 1.0 / cfg.q) / (x * x);
}

ExampleReport run_example(const ExampleConfig& cfg) {
  cfg.validate();
  ExampleReport rep;
  rep.config = cfg;
  rep.eps = cfg.epsilon();
  const MeasureSpec w = example_weight(cfg.b);
  const double pp = ConjugateExponent::of(cfg.p).p_prime;

  ScanOptions opt;
  opt.grid = cfg.grid;
  opt.quad = cfg.quad;
  opt.workers = cfg.workers;
  opt.check_hypotheses = false;

  rep.k_pp = k_pq_classical(w, w, w, cfg.p, cfg.p, opt);
  rep.k_pq = k_pq_classical(w, w, w, cfg.p, cfg.q, opt);

  const YoungFunction phi = YoungFunction::logbump(cfg.p, cfg.alpha);
  const std::vector<double> grid = default_certification_grid();
  rep.submultiplicative = certify_submultiplicative(phi, grid);
  try {
    rep.lambda_convexity = lambda_transform(phi, cfg.p, grid).certificate;
  } catch (const ConvexityViolation& e) {
    rep.lambda_convexity.label = phi.label();
    rep.lambda_convexity.violations.push_back(e.witness());
  }
  if (!rep.submultiplicative.pass() || !rep.lambda_convexity.pass())
    fail(ErrorCode::HypothesisViolation, "logbump(p, alpha) failed its hypothesis certificates");
  rep.k_phi = k_p_phi_forward(w, w, w, cfg.p, phi, opt);

  // Growth and overlay on the term that carries mu[0, x]^{1/q}.
  const SupTerm* term = &rep.k_pq.terms.back();
  for (const SupTerm& t : rep.k_pq.terms)
    if (t.diverging_endpoint == "a") term = &t;
  std::map<double, double> by_x;
  for (const TracePoint& tp : term->trace) by_x[tp.x] = tp.log_supremand;
  std::vector<double> toward;
  for (double x : cfg.grid.geometric_toward(0.0, cfg.b, true)) {
    const auto it = by_x.find(x);
    if (it != by_x.end()) toward.push_back(it->second);
  }
  if (toward.size() >= kDivergenceWindow) rep.log_growth = toward.back() - median(toward);

  const double k = 3.0 * (pp - 1.0);
  const double scale = 1.0 / std::sqrt(rep.eps * cfg.p);
  for (const TracePoint& tp : term->trace) {
    const double t0 = tp.x * scale;
    if (!(t0 < cfg.b)) continue;
    OverlayPoint o;
    o.x = tp.x;
    o.t0 = t0;
    o.log_supremand = tp.log_supremand;
    o.log_lower_bound = (1.0 - pp) * std::log(2.0) + log_g_t0(cfg, rep.eps, tp.x) +
                        log_power_integral(k, tp.x, t0) / pp;
    o.holds = o.log_supremand >= o.log_lower_bound - kLogSlack * std::max(1.0, std::abs(o.log_lower_bound));
    rep.overlay.push_back(o);
  }

  for (double x : {0.3, 0.1, 0.03, 0.01, 0.003, 0.001}) {
    const double log_t = 0.5 / (x * x);
    rep.inverse_asymptotics.push_back(
        {x, phi.log_inverse(log_t), (log_t - cfg.alpha * std::log(log_t)) / cfg.p});
  }

  if (rep.k_pp.classification != Classification::FiniteStable)
    rep.inconsistencies.push_back(std::string("K_{p,p} classified ") + to_string(rep.k_pp.classification) +
                                  ", expected finite-stable");
  if (rep.k_pq.classification != Classification::Diverging)
    rep.inconsistencies.push_back(std::string("K_{p,q} classified ") + to_string(rep.k_pq.classification) +
                                  ", expected diverging");
  if (rep.k_phi.classification != Classification::FiniteStable)
    rep.inconsistencies.push_back(std::string("K_{p,Phi} classified ") + to_string(rep.k_phi.classification) +
                                  ", expected finite-stable");
  for (const OverlayPoint& o : rep.overlay) {
    if (!o.holds) {
      rep.inconsistencies.push_back("supremand below the g(t0) lower bound at x = " + std::to_string(o.x));
      break;
    }
  }
  return rep;
}

SplitRow split_integral_row(const ExampleConfig& cfg, double x) {
  cfg.validate();
  const double delta = std::pow(x, 4.0 * cfg.alpha / (3.0 * cfg.p));
  if (!(x > 0.0 && x < 1.0 && delta > x && delta < cfg.b))
    fail(ErrorCode::InvalidArgument, "split check needs 0 < x < delta(x) < min(1, b)");
  const double pp = ConjugateExponent::of(cfg.p).p_prime;
  const double c = pp - 1.0;
  const double inv_x2 = 1.0 / (x * x);
  const double log_x_factor = -4.0 * cfg.alpha * c * std::log(x);

  // v = u + 1/x^2 with u = -1/t^2, so t^2 = 1/(1/x^2 - v).
  const Integrand log_integrand = [&](double v) {
    return -c * v + log_x_factor - 1.5 * pp * std::log(inv_x2 - v);
  };
  const double v_delta = inv_x2 - 1.0 / (delta * delta);
  const double v_b = inv_x2 - 1.0 / (cfg.b * cfg.b);

  SplitRow row;
  row.x = x;
  row.delta = delta;
  row.log_i = log_integrate_exp(log_integrand, 0.0, v_delta, cfg.quad);
  row.log_ii = log_integrate_exp(log_integrand, v_delta, v_b, cfg.quad);
  row.log_i_bound = std::log(-std::expm1(-c * v_delta)) - std::log(c);
  row.log_ii_bound = std::log(2.0) + log_x_factor - c * v_delta + log_power_integral(3.0 * c, delta, cfg.b);
  const Integrand log_tail = [&](double t) {
    return -c * (inv_x2 - 1.0 / (t * t)) + log_x_factor + 3.0 * c * std::log(t);
  };
  row.log_tail = log_integrate_exp(log_tail, x, cfg.b, cfg.quad);
  return row;
}

SplitReport split_integral_check(const ExampleConfig& cfg, double x_hi, double x_lo, std::size_t points) {
  if (!(x_lo > 0.0 && x_lo < x_hi) || points < 2) fail(ErrorCode::InvalidArgument, "bad split sweep range");
  std::vector<double> xs = log_spaced(x_lo, x_hi, points);
  std::reverse(xs.begin(), xs.end());
  SplitReport rep;
  rep.rows.resize(xs.size());
  parallel_for(xs.size(), cfg.workers, [&](std::size_t i) { rep.rows[i] = split_integral_row(cfg, xs[i]); });

  const double c = ConjugateExponent::of(cfg.p).p_prime - 1.0;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const SplitRow& r = rep.rows[i];
    if (!(r.delta > r.x)) rep.delta_above_x = false;
    if (!(r.log_i <= r.log_i_bound + kLogSlack) || !(r.log_i_bound <= -std::log(c) + kLogSlack)) rep.i_bounded = false;
    if (!(r.log_ii <= r.log_ii_bound + kLogSlack * std::max(1.0, std::abs(r.log_ii_bound)))) rep.ii_below_bound = false;
    if (i > 0 && !(r.log_ii < rep.rows[i - 1].log_ii)) rep.ii_decreasing = false;
    // tail = (I + II) / 2 since d(-1/t^2) = 2 t^{-3} dt
    const double half_split = log_add_exp(r.log_i, r.log_ii) - std::log(2.0);
    const double half_bound = log_add_exp(r.log_i_bound, r.log_ii_bound) - std::log(2.0);
    if (!(std::abs(r.log_tail - half_split) < 1e-6) || !(r.log_tail <= half_bound + kLogSlack)) rep.tail_bounded = false;
  }
  return rep;
}

}  // namespace orlicz
