#include "constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "errors.hpp"
#include "gauge.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using LogSupremand = std::function<std::vector<double>(const std::vector<double>&)>;

std::vector<double> sorted_unique_inside(std::vector<double> pts, double a, double b) {
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (!(x > a && x < b)) continue;
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  return out;
}

double log_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return -kInf;
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Values along the geometric subgrid, ordered toward the endpoint.
std::vector<double> toward_values(const std::vector<TracePoint>& trace, const std::vector<double>& geo) {
  std::vector<double> out;
  out.reserve(geo.size());
  for (double x : geo) {
    const auto it = std::lower_bound(trace.begin(), trace.end(), x,
                                     [](const TracePoint& t, double v) { return t.x < v; });
    if (it != trace.end() && it->x == x) out.push_back(it->log_supremand);
  }
  return out;
}

bool diverges_along(const std::vector<double>& vals) {
  if (vals.size() < kDivergenceWindow + 1) return false;
  const std::size_t n = vals.size();
  for (std::size_t i = n - kDivergenceWindow + 1; i < n; ++i) {
    if (!(vals[i] > vals[i - 1])) return false;
  }
  return vals.back() - log_median(vals) > std::log(kDivergenceFactor);
}

struct Scan {
  std::vector<TracePoint> trace;
  double log_sup = -kInf;
  double argmax = 0.0;
};

Scan run_scan(const LogSupremand& fn, double a, double b, const ScanGrid& grid) {
  std::vector<double> xs = grid.points(a, b);
  std::vector<double> vals = fn(xs);
  if (grid.refine && !xs.empty()) {
    std::size_t best = 0;
    bool has_inf = false;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] == kInf) has_inf = true;
      if (vals[i] > vals[best]) best = i;
    }
    if (!has_inf && vals[best] > -kInf) {
      const double lo = best == 0 ? a : xs[best - 1];
      const double hi = best + 1 == xs.size() ? b : xs[best + 1];
      std::vector<double> extra = xs;
      for (std::size_t k = 1; k <= grid.refine_points; ++k)
        extra.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid.refine_points + 1));
      xs = sorted_unique_inside(std::move(extra), a, b);
      vals = fn(xs);
    }
  }
  Scan s;
  s.trace.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lv = std::isnan(vals[i]) ? -kInf : vals[i];
    s.trace.push_back({xs[i], std::exp(lv), lv});
    if (s.trace.size() == 1 || lv > s.log_sup) {
      s.log_sup = lv;
      s.argmax = xs[i];
    }
  }
  return s;
}

SupTerm evaluate_term(const std::string& name, const LogSupremand& fn, double a, double b, const ScanOptions& opt) {
  Scan s = run_scan(fn, a, b, opt.grid);
  SupTerm term;
  term.name = name;
  term.trace = std::move(s.trace);
  term.log_sup = s.log_sup;
  term.sup = std::exp(s.log_sup);
  term.argmax = s.argmax;

  if (term.log_sup == kInf) {
    term.classification = Classification::Diverging;
    const auto first_inf = std::find_if(term.trace.begin(), term.trace.end(),
                                        [](const TracePoint& t) { return t.log_supremand == kInf; });
    term.diverging_endpoint = first_inf == term.trace.begin() ? "a" : "b";
    return term;
  }
  const bool geo_a = opt.grid.policy == GridPolicy::GeometricA || opt.grid.policy == GridPolicy::Union;
  const bool geo_b = opt.grid.policy == GridPolicy::GeometricB || opt.grid.policy == GridPolicy::Union;
  if (geo_a && diverges_along(toward_values(term.trace, opt.grid.geometric_toward(a, b, true)))) {
    term.classification = Classification::Diverging;
    term.diverging_endpoint = "a";
    return term;
  }
  if (geo_b && diverges_along(toward_values(term.trace, opt.grid.geometric_toward(a, b, false)))) {
    term.classification = Classification::Diverging;
    term.diverging_endpoint = "b";
    return term;
  }
  if (!opt.classify) return term;

  ScanGrid finer = opt.grid.doubled();
  const Scan s2 = run_scan(fn, a, b, finer);
  term.log_sup_doubled = s2.log_sup;
  if (term.log_sup == -kInf && s2.log_sup == -kInf) {
    term.classification = Classification::FiniteStable;
  } else if (std::isfinite(term.log_sup) && std::isfinite(s2.log_sup) &&
             std::abs(std::expm1(s2.log_sup - term.log_sup)) < kStabilityTolerance) {
    term.classification = Classification::FiniteStable;
  } else {
    term.classification = Classification::Inconclusive;
  }
  return term;
}

Classification combine(const std::vector<SupTerm>& terms) {
  bool all_stable = true;
  for (const SupTerm& t : terms) {
    if (t.classification == Classification::Diverging) return Classification::Diverging;
    if (t.classification != Classification::FiniteStable) all_stable = false;
  }
  return all_stable ? Classification::FiniteStable : Classification::Inconclusive;
}

void check_common(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w) {
  if (mu.a() != nu.a() || mu.a() != w.a() || mu.b() != nu.b() || mu.b() != w.b())
    fail(ErrorCode::InvalidArgument, "mu, nu and w must share the interval [a, b]");
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must satisfy 1 < p < inf");
}

/// log of the factor in front of the inner integral, as a function of log mass.
using LogFactor = std::function<double(double)>;

LogFactor forward_factor(const YoungFunction& phi) {
  return [&phi](double log_mass) {
    if (log_mass == -kInf) return -kInf;
    return -2.0 * phi.log_inverse(-0.5 * log_mass);
  };
}

LogFactor backward_factor(const YoungFunction& phi) {
  return [&phi](double log_mass) {
    if (log_mass == -kInf) return -kInf;
    return -phi.log_inverse(-log_mass);
  };
}

LogFactor classical_factor(double q) {
  return [q](double log_mass) { return log_mass / q; };
}

/// One sup of the two-sup constants. from_left: integral over [a, x] with the
/// mass of [x, b] in the factor; otherwise integral over [x, b] with [a, x].
SupTerm hardy_term(const std::string& name, double p, const LogFactor& factor, const MeasureSpec& mu,
                   const LogWeight& tau, const MeasureSpec& w, bool from_left, const ScanOptions& opt) {
  const double pp = ConjugateExponent::of(p).p_prime;
  const double a = w.a();
  const double b = w.b();
  const LogSupremand fn = [&](const std::vector<double>& xs) {
    const std::vector<double> log_inner = log_inner_integrals(xs, p, tau, w, from_left, opt.quad, opt.workers);
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), opt.workers, [&](std::size_t i) {
      const double x = xs[i];
      const double log_mass = from_left ? mu.log_interval_mass(x, b) : mu.log_interval_mass(a, x);
      const double lf = factor(log_mass);
      if (lf == -kInf || log_inner[i] == -kInf) {
        out[i] = -kInf;
        return;
      }
      out[i] = lf + log_inner[i] / pp;
    });
    return out;
  };
  return evaluate_term(name, fn, a, b, opt);
}

ConstantReport assemble(std::string name, std::vector<SupTerm> terms, double log_normalizer,
                        const ScanOptions& opt) {
  ConstantReport r;
  r.name = std::move(name);
  r.grid = opt.grid;
  double log_sum = -kInf;
  for (const SupTerm& t : terms) log_sum = log_add_exp(log_sum, t.log_sup);
  r.log_value = log_sum - log_normalizer;
  r.value = std::exp(r.log_value);
  r.normalizer = std::exp(log_normalizer);
  r.classification = combine(terms);
  r.terms = std::move(terms);
  return r;
}

ConstantReport two_sup_constant(std::string name, const MeasureSpec& mu, const MeasureSpec& nu,
                                const MeasureSpec& w, double p, const LogFactor& factor, const ScanOptions& opt) {
  check_common(mu, nu, w);
  check_p(p);
  const double total = nu.total_mass();
  if (!(total > 0.0)) fail(ErrorCode::ZeroTotalMass, "nu[a, b] must be positive");
  std::vector<SupTerm> terms;
  terms.push_back(hardy_term("left", p, factor, mu, LogWeight::left_mass(nu), w, true, opt));
  terms.push_back(hardy_term("right", p, factor, mu, LogWeight::right_mass(nu), w, false, opt));
  return assemble(std::move(name), std::move(terms), nu.log_interval_mass(nu.a(), nu.b()), opt);
}

}  // namespace

const char* to_string(GridPolicy policy) noexcept {
  switch (policy) {
    case GridPolicy::Uniform: return "uniform";
    case GridPolicy::GeometricA: return "geometric-a";
    case GridPolicy::GeometricB: return "geometric-b";
    case GridPolicy::Union: return "union";
  }
  return "union";
}

GridPolicy grid_policy_from_string(const std::string& name) {
  if (name == "uniform") return GridPolicy::Uniform;
  if (name == "geometric-a") return GridPolicy::GeometricA;
  if (name == "geometric-b") return GridPolicy::GeometricB;
  if (name == "union") return GridPolicy::Union;
  fail(ErrorCode::Config, "unknown grid policy '" + name + "' (uniform, geometric-a, geometric-b, union)");
}

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::FiniteStable: return "finite-stable";
    case Classification::Diverging: return "diverging";
    case Classification::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ScanGrid ScanGrid::doubled() const {
  ScanGrid g = *this;
  g.uniform_points = 2 * uniform_points + 1;
  g.geometric_points = geometric_points > 1 ? 2 * geometric_points - 1 : geometric_points;
  return g;
}

std::vector<double> ScanGrid::geometric_toward(double a, double b, bool toward_a) const {
  std::vector<double> out;
  if (geometric_points == 0) return out;
  if (!(geometric_min_fraction > 0.0 && geometric_min_fraction < 0.5))
    fail(ErrorCode::Config, "geometric_min_fraction must lie in (0, 1/2)");
  const double half = 0.5 * (b - a);
  const double log_rho = std::log(2.0 * geometric_min_fraction);
  for (std::size_t k = 0; k < geometric_points; ++k) {
    const double frac = geometric_points == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(geometric_points - 1);
    const double d = half * std::exp(log_rho * frac);
    out.push_back(toward_a ? a + d : b - d);
  }
  return out;
}

std::vector<double> ScanGrid::points(double a, double b) const {
  if (!(b > a)) fail(ErrorCode::InvalidArgument, "scan grid needs a < b");
  std::vector<double> pts;
  if (policy == GridPolicy::Uniform || policy == GridPolicy::Union) {
    const double h = (b - a) / static_cast<double>(uniform_points + 1);
    for (std::size_t i = 1; i <= uniform_points; ++i) pts.push_back(a + h * static_cast<double>(i));
  }
  if (policy == GridPolicy::GeometricA || policy == GridPolicy::Union) {
    const auto g = geometric_toward(a, b, true);
    pts.insert(pts.end(), g.begin(), g.end());
  }
  if (policy == GridPolicy::GeometricB || policy == GridPolicy::Union) {
    const auto g = geometric_toward(a, b, false);
    pts.insert(pts.end(), g.begin(), g.end());
  }
  return sorted_unique_inside(std::move(pts), a, b);
}

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

LogWeight LogWeight::one() {
  return LogWeight{[](double) { return 0.0; }, {}};
}

LogWeight LogWeight::left_mass(const MeasureSpec& nu) {
  std::vector<double> breaks = nu.breakpoints();
  for (const Atom& atom : nu.atoms()) breaks.push_back(atom.location);
  return LogWeight{[nu](double t) { return nu.log_interval_mass(nu.a(), t); }, std::move(breaks)};
}

LogWeight LogWeight::right_mass(const MeasureSpec& nu) {
  std::vector<double> breaks = nu.breakpoints();
  for (const Atom& atom : nu.atoms()) breaks.push_back(atom.location);
  return LogWeight{[nu](double t) { return nu.log_interval_mass(t, nu.b()); }, std::move(breaks)};
}

std::vector<double> log_inner_integrals(const std::vector<double>& xs, double p, const LogWeight& tau,
                                        const MeasureSpec& w, bool from_left, const QuadratureConfig& quad,
                                        unsigned workers) {
  const double pp = ConjugateExponent::of(p).p_prime;
  const double a = w.a();
  const double b = w.b();
  const Integrand log_f = [&](double t) {
    const double lt = tau.log_eval(t);
    if (lt == -kInf) return -kInf;
    const double lw = w.log_density(t);
    if (lw == -kInf) return kInf;
    return pp * lt + (1.0 - pp) * lw;
  };

  std::vector<double> cuts = xs;
  cuts.insert(cuts.end(), w.breakpoints().begin(), w.breakpoints().end());
  cuts.insert(cuts.end(), tau.breaks.begin(), tau.breaks.end());
  cuts = sorted_unique_inside(std::move(cuts), a, b);
  if (cuts.empty()) return std::vector<double>(xs.size(), -kInf);

  // cell[0] is the endpoint piece; cell[i] covers [cuts[i-1], cuts[i]] (left)
  // or [cuts[i], cuts[i+1]] mirrored (right).
  const std::size_t n = cuts.size();
  std::vector<double> cell(n);
  parallel_for(n, workers, [&](std::size_t i) {
    if (from_left) {
      cell[i] = i == 0 ? log_integrate_exp_toward(log_f, a, cuts[0], quad)
                       : log_integrate_exp(log_f, cuts[i - 1], cuts[i], quad);
    } else {
      cell[i] = i + 1 == n ? log_integrate_exp_toward(log_f, b, cuts[n - 1], quad)
                           : log_integrate_exp(log_f, cuts[i], cuts[i + 1], quad);
    }
  });
  std::vector<double> acc(n);
  if (from_left) {
    double run = -kInf;
    for (std::size_t i = 0; i < n; ++i) acc[i] = run = log_add_exp(run, cell[i]);
  } else {
    double run = -kInf;
    for (std::size_t i = n; i-- > 0;) acc[i] = run = log_add_exp(run, cell[i]);
  }
  std::vector<double> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const auto it = std::lower_bound(cuts.begin(), cuts.end(), xs[j]);
    out[j] = acc[static_cast<std::size_t>(it - cuts.begin())];
  }
  return out;
}

double c0_of_phi(const YoungFunction& phi) { return 2.0 / invert_young(phi, 0.5); }

void require_forward_hypotheses(const YoungFunction& phi, double p) {
  check_p(p);
  if (!phi.strictly_increasing_on_nonneg())
    fail(ErrorCode::HypothesisViolation, phi.label() + " is not invertible on [0, inf)");
  const SubmultiplicativityReport sub = certify_submultiplicative(phi, default_certification_grid());
  if (!sub.pass())
    fail(ErrorCode::HypothesisViolation, phi.label() + " failed the submultiplicativity certificate (" +
                                             std::to_string(sub.violation_count) + " violations)");
  try {
    (void)lambda_transform(phi, p);
  } catch (const ConvexityViolation& e) {
    fail(ErrorCode::HypothesisViolation, std::string("Lambda transform is not convex: ") + e.what());
  }
}

ConstantReport k1_phi(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, const YoungFunction& phi,
                      const ScanOptions& opt) {
  check_common(mu, nu, w);
  const double total = nu.total_mass();
  if (!(total > 0.0)) fail(ErrorCode::ZeroTotalMass, "nu[a, b] must be positive");
  const double a = mu.a();
  const double b = mu.b();
  std::atomic<std::size_t> zero_weight{0};

  const LogSupremand fn = [&](const std::vector<double>& xs) {
    std::vector<double> out(xs.size());
    parallel_for(xs.size(), opt.workers, [&](std::size_t i) {
      const double x = xs[i];
      const double lw = w.log_density(x);
      if (lw == -kInf) {
        ++zero_weight;
        out[i] = -kInf;
        return;
      }
      // nu[a,x] chi_[x,b] - nu[x,b] chi_[a,x], both intervals closed
      const double left = nu.interval_mass(a, x);
      const double right = nu.interval_mass(x, b);
      const double m_lo = mu.density_mass(a, x);
      const double m_hi = mu.density_mass(x, b);
      const auto value_at = [&](double t) {
        return (t >= x ? left : 0.0) - (t <= x ? right : 0.0);
      };
      const double scale = std::max(left, right);
      const GaugeResult g = solve_gauge(
          [&](double k) {
            double m = 0.0;
            if (m_lo > 0.0 && right > 0.0) m += phi(right / k) * m_lo;
            if (m_hi > 0.0 && left > 0.0) m += phi(left / k) * m_hi;
            for (const Atom& atom : mu.atoms()) {
              const double v = value_at(atom.location);
              if (v != 0.0) m += phi(v / k) * atom.mass;
            }
            return m > 1e300 ? kInf : m;
          },
          scale);
      out[i] = g.norm > 0.0 ? std::log(g.norm) - lw : -kInf;
    });
    return out;
  };
  std::vector<SupTerm> terms;
  terms.push_back(evaluate_term("sup", fn, a, b, opt));
  ConstantReport r = assemble("k1", std::move(terms), std::log(total), opt);
  if (zero_weight > 0)
    r.diagnostics.push_back("skipped " + std::to_string(zero_weight.load()) + " scan points where w(x) = 0");
  return r;
}

ConstantReport k_p_phi_forward(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p,
                               const YoungFunction& phi, const ScanOptions& opt) {
  if (opt.check_hypotheses) require_forward_hypotheses(phi, p);
  check_common(mu, nu, w);
  const double total = nu.total_mass();
  if (!(total > 0.0)) fail(ErrorCode::ZeroTotalMass, "nu[a, b] must be positive");
  ScanOptions inner = opt;
  inner.check_hypotheses = false;
  const ConstantReport s = hardy_s_constant(p, phi, mu, LogWeight::left_mass(nu), w, inner);
  const ConstantReport t = hardy_t_constant(p, phi, mu, LogWeight::right_mass(nu), w, inner);
  std::vector<SupTerm> terms{s.terms.front(), t.terms.front()};
  terms[0].name = "left";
  terms[1].name = "right";
  return assemble("k_p_phi_forward", std::move(terms), nu.log_interval_mass(nu.a(), nu.b()), opt);
}

ConstantReport k_p_phi_backward(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p,
                                const YoungFunction& phi, const ScanOptions& opt) {
  if (!phi.strictly_increasing_on_nonneg())
    fail(ErrorCode::HypothesisViolation, phi.label() + " is not invertible on [0, inf)");
  return two_sup_constant("k_p_phi_backward", mu, nu, w, p, backward_factor(phi), opt);
}

ConstantReport k_pq_classical(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p, double q,
                              const ScanOptions& opt) {
  check_p(p);
  if (!(q >= p) || !std::isfinite(q)) fail(ErrorCode::InvalidArgument, "classical constant needs q >= p");
  return two_sup_constant("k_pq_classical", mu, nu, w, p, classical_factor(q), opt);
}

ConstantReport hardy_s_constant(double p, const YoungFunction& phi, const MeasureSpec& mu, const LogWeight& tau,
                                const MeasureSpec& w, const ScanOptions& opt) {
  check_p(p);
  if (opt.check_hypotheses) require_forward_hypotheses(phi, p);
  std::vector<SupTerm> terms{hardy_term("S", p, forward_factor(phi), mu, tau, w, true, opt)};
  return assemble("hardy_s", std::move(terms), 0.0, opt);
}

ConstantReport hardy_t_constant(double p, const YoungFunction& phi, const MeasureSpec& mu, const LogWeight& tau,
                                const MeasureSpec& w, const ScanOptions& opt) {
  check_p(p);
  if (opt.check_hypotheses) require_forward_hypotheses(phi, p);
  std::vector<SupTerm> terms{hardy_term("T", p, forward_factor(phi), mu, tau, w, false, opt)};
  return assemble("hardy_t", std::move(terms), 0.0, opt);
}

}  // namespace orlicz
