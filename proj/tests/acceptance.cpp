// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"
#include "gauge.hpp"
#include "showcase.hpp"
#include "verify.hpp"

using namespace orlicz;

namespace {

unsigned workers() { return std::max(2u, std::min(8u, std::thread::hardware_concurrency())); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

std::vector<double> sorted_breaks(Rng& rng, std::size_t inner) {
  std::vector<double> b{0.0, 1.0};
  for (std::size_t i = 0; i < inner; ++i) b.push_back(rng.uniform(0.05, 0.95));
  std::sort(b.begin(), b.end());
  return b;
}

/// Random measure on [0, 1]; atoms only when allowed.
MeasureSpec random_measure(Rng& rng, bool atoms, bool allow_expdeg = false) {
  std::vector<Atom> at;
  if (atoms && rng.uniform() < 0.5) {
    const std::size_t n = 1 + rng.index(2);
    for (std::size_t i = 0; i < n; ++i) at.push_back({rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.5)});
  }
  const std::size_t kinds = allow_expdeg ? 4 : 3;
  switch (rng.index(kinds)) {
    case 0: return MeasureSpec::lebesgue(0.0, 1.0, at);
    case 1: return MeasureSpec::power(0.0, 1.0, rng.uniform(-0.4, 0.8), at);
    case 2: {
      const std::vector<double> br = sorted_breaks(rng, 1 + rng.index(3));
      std::vector<double> vals;
      for (std::size_t i = 0; i + 1 < br.size(); ++i) vals.push_back(rng.uniform(0.2, 3.0));
      return MeasureSpec::piecewise_constant(br, vals, at);
    }
    default: return MeasureSpec::expdeg(0.0, 1.0, at);
  }
}

/// int |f|^p dm for a density that is constant on pieces, by the exact
/// antiderivative of |linear|^p on each sub-segment.
double lp_integral_exact(const PiecewiseLinearFunction& f, double p, const std::vector<double>& breaks,
                         const std::vector<double>& levels) {
  std::vector<double> cuts = f.breakpoints_with_zero_crossings();
  cuts.insert(cuts.end(), breaks.begin(), breaks.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double x0 = cuts[i];
    const double x1 = cuts[i + 1];
    const double mid = 0.5 * (x0 + x1);
    const std::size_t piece = std::upper_bound(breaks.begin(), breaks.end(), mid) - breaks.begin() - 1;
    const double y0 = std::abs(f(x0));
    const double y1 = std::abs(f(x1));
    double seg;
    if (std::abs(y1 - y0) < 1e-14 * std::max(1.0, y0))
      seg = std::pow(y0, p) * (x1 - x0);
    else
      seg = (std::pow(y1, p + 1) - std::pow(y0, p + 1)) / ((p + 1) * (y1 - y0)) * (x1 - x0);
    total += levels[piece] * seg;
  }
  return total;
}

PiecewiseLinearFunction random_pl(Rng& rng, std::size_t max_segments) {
  return random_family(rng.next(), 1, max_segments, 0.0, 1.0).front();
}

struct Line {
  int id;
  bool pass;
  std::string text;
};

std::vector<Line> lines;

void report(int id, bool pass, const std::string& text) {
  lines.push_back({id, pass, text});
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

template <typename F>
void guarded(int id, const char* what, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string(what) + ": unexpected error: " + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::fprintf(stderr, "  (criterion %d took %.1f s)\n", id, secs);
}

// 1. gauge norm with |t|^p equals the L^p norm
void criterion_1() {
  Rng rng(101);
  double worst = 0.0;
  int cases = 0;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const YoungFunction phi = YoungFunction::power(p);
    for (int k = 0; k < 50; ++k) {
      std::vector<double> br = sorted_breaks(rng, rng.index(3));
      std::vector<double> lv;
      for (std::size_t i = 0; i + 1 < br.size(); ++i) lv.push_back(rng.uniform(0.2, 3.0));
      const MeasureSpec m = MeasureSpec::piecewise_constant(br, lv);
      const PiecewiseLinearFunction f = random_pl(rng, 12);
      const double direct = std::pow(lp_integral_exact(f, p, br, lv), 1.0 / p);
      const double g = gauge_norm(f, phi, m);
      worst = std::max(worst, std::abs(g - direct) / direct);
      ++cases;
    }
  }
  report(1, worst <= 1e-8, fmt("power gauge norm vs exact L^p, %g cases, max rel err %.2e (tol 1e-8)", cases, worst));
}

// 2. gauge(chi_E) * Phi^{-1}(1 / mu(E)) = 1
void criterion_2() {
  Rng rng(202);
  double worst = 0.0;
  int cases = 0;
  while (cases < 50) {
    const MeasureSpec mu = random_measure(rng, true, true);
    YoungFunction phi = YoungFunction::power(1.0);
    switch (rng.index(4)) {
      case 0: phi = YoungFunction::power(rng.uniform(1.0, 4.0), rng.uniform(0.5, 2.0)); break;
      case 1: phi = YoungFunction::logbump(rng.uniform(1.0, 3.0), rng.uniform(0.2, 2.0)); break;
      case 2: phi = YoungFunction::exponential(); break;
      default: phi = YoungFunction::power(1.0); break;
    }
    double lo = rng.uniform(0.0, 1.0);
    double hi = rng.uniform(0.0, 1.0);
    if (lo > hi) std::swap(lo, hi);
    const StepFunction chi = StepFunction::indicator(0.0, 1.0, lo, hi);
    const double mass = mu.interval_mass(lo, hi);
    if (!(mass > 0.0)) continue;
    const double g = gauge_norm(chi, phi, mu);
    worst = std::max(worst, std::abs(g * phi.inverse(1.0 / mass) - 1.0));
    ++cases;
  }
  report(2, worst <= 1e-8, fmt("characteristic identity on %g random (E, mu, Phi), max |err| %.2e (tol 1e-8)", cases, worst));
}

// 3. ratios <= 2 K1 and the extremal family reaches the supremand
void criterion_3() {
  Rng rng(303);
  const std::vector<YoungFunction> phis{YoungFunction::power(1.0), YoungFunction::power(2.0),
                                        YoungFunction::logbump(2.0, 1.0)};
  ScanOptions so;
  so.workers = workers();
  double worst_excess = -1e300;
  double worst_reach = 1e300;
  int ratios = 0;
  int infinite = 0;
  for (int k = 0; k < 20; ++k) {
    const YoungFunction& phi = phis[k % 3];
    PoincareInstance inst{random_measure(rng, true), random_measure(rng, true), random_measure(rng, false), 1.0, phi};
    const ConstantReport k1 = k1_phi(inst.mu, inst.nu, inst.w, phi, so);
    if (!std::isfinite(k1.value)) {
      ++infinite;
      continue;
    }
    const double bound = 2.0 * k1.value;
    std::vector<PiecewiseLinearFunction> fam = random_family(rng.next(), 25, 16, 0.0, 1.0);
    const double alpha = k1.terms.front().argmax;
    const double room = std::min(alpha, 1.0 - alpha);
    double reach = 0.0;
    for (double rel : {1e-2, 1e-4, 1e-6}) {
      try {
        PiecewiseLinearFunction f = extremal_p1(inst, alpha, rel * room);
        reach = std::max(reach, poincare_ratio(inst, f).ratio);
        fam.push_back(std::move(f));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BadAlpha) throw;
      }
    }
    for (double a2 : {0.3, 0.7}) fam.push_back(extremal_p1(inst, a2, 1e-3));
    std::vector<double> r(fam.size());
    parallel_for(fam.size(), workers(), [&](std::size_t i) { r[i] = poincare_ratio(inst, fam[i]).ratio; });
    for (double v : r) worst_excess = std::max(worst_excess, v - bound);
    ratios += static_cast<int>(r.size());
    worst_reach = std::min(worst_reach, reach / k1.value);
  }
  const bool pass = worst_excess <= 1e-6 && worst_reach >= 0.95;
  report(3, pass,
         fmt("%g ratios on 20 instances: max(ratio - 2 K1) = %.3e; min extremal reach at argmax = %.4f of K1", ratios,
             worst_excess, worst_reach) +
             (infinite ? fmt(" (%g instances with infinite K1 skipped)", infinite) : std::string()));
}

// 4. ratios <= C0 K_{p,Phi} for p = 2 and logbump(2, 1)
void criterion_4() {
  Rng rng(404);
  const YoungFunction phi = YoungFunction::logbump(2.0, 1.0);
  CertifyOptions co;
  co.workers = workers();
  co.scan.workers = workers();
  int records = 0;
  int violations = 0;
  bool hyp = true;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    PoincareInstance inst{random_measure(rng, true), random_measure(rng, true), random_measure(rng, false), 2.0, phi};
    std::vector<NamedFunction> fam;
    const auto fs = random_family(rng.next(), 25, 16, 0.0, 1.0);
    for (std::size_t i = 0; i < fs.size(); ++i) fam.push_back({"r" + std::to_string(i), fs[i]});
    for (double a : {0.25, 0.5, 0.75}) {
      ExtremalPair pair = extremal_p(inst, a);
      fam.push_back({"f1", std::move(pair.f1)});
      fam.push_back({"f2", std::move(pair.f2)});
    }
    const CertificationReport rep = certify_instance(inst, fam, co);
    hyp = hyp && rep.hypotheses_ok;
    records += static_cast<int>(rep.records.size());
    violations += static_cast<int>(rep.violations.size());
    if (std::isfinite(rep.bound) && rep.bound > 0.0) worst = std::max(worst, rep.max_ratio / rep.bound);
  }
  report(4, hyp && violations == 0,
         fmt("%g ratios on 20 instances, %g above C0 K + 1e-6; largest ratio / bound = %.4f", records, violations,
             worst) +
             (hyp ? "" : " (hypothesis certificate failed)"));
}

// 5. forward = backward = classical for powers; forward >= backward for logbump
void criterion_5() {
  Rng rng(505);
  ScanOptions so;
  so.workers = workers();
  so.classify = false;
  double worst_collapse = 0.0;
  double worst_order = -1e300;
  int instances = 0;
  for (double p : {1.5, 2.0, 3.0}) {
    for (int k = 0; k < 3; ++k) {
      const MeasureSpec mu = random_measure(rng, true);
      const MeasureSpec nu = random_measure(rng, true);
      const MeasureSpec w = random_measure(rng, false);
      for (double q : {p, p + 0.5, 2.0 * p}) {
        const YoungFunction phi = YoungFunction::power(q);
        const double f = k_p_phi_forward(mu, nu, w, p, phi, so).value;
        const double b = k_p_phi_backward(mu, nu, w, p, phi, so).value;
        const double c = k_pq_classical(mu, nu, w, p, q, so).value;
        worst_collapse = std::max({worst_collapse, std::abs(f - b) / f, std::abs(f - c) / f});
      }
      const YoungFunction lb = YoungFunction::logbump(p, 1.0);
      const double f = k_p_phi_forward(mu, nu, w, p, lb, so).value;
      const double b = k_p_phi_backward(mu, nu, w, p, lb, so).value;
      worst_order = std::max(worst_order, (b - f) / f);
      ++instances;
    }
  }
  report(5, worst_collapse <= 1e-6 && worst_order <= 1e-12,
         fmt("%g instances: max rel |K_fwd - K_bwd|, |K_fwd - K_pq| = %.2e (tol 1e-6); max (K_bwd - K_fwd)/K_fwd for "
             "logbump = %.2e",
             instances, worst_collapse, worst_order));
}

// 6. the degenerate-weight example
void criterion_6() {
  ExampleConfig cfg;
  cfg.workers = workers();
  const ExampleReport r = run_example(cfg);
  double pp_change = 0.0;
  for (const SupTerm& t : r.k_pp.terms) pp_change = std::max(pp_change, std::abs(std::expm1(t.log_sup_doubled - t.log_sup)));
  const double reach = cfg.grid.geometric_toward(0.0, cfg.b, true).back();
  const bool pass = r.k_pp.classification == Classification::FiniteStable && pp_change < 0.01 &&
                    r.k_pq.classification == Classification::Diverging && r.log_growth > std::log(1e6) &&
                    reach <= 1e-3 * (1 + 1e-12) && r.k_phi.classification == Classification::FiniteStable &&
                    r.consistent();
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "K_pp %s (value %.6f, doubling change %.2e); K_pq %s (growth e^%.4g down to x = %.0e); K_Phi %s "
                "(value %.6f); overlay holds at %zu points",
                to_string(r.k_pp.classification), r.k_pp.value, pp_change, to_string(r.k_pq.classification),
                r.log_growth, reach, to_string(r.k_phi.classification), r.k_phi.value, r.overlay.size());
  report(6, pass, buf);
}

// 7. generalized Minkowski inequality
void criterion_7() {
  Rng rng(707);
  const std::vector<YoungFunction> phis{YoungFunction::power(1.0), YoungFunction::power(2.5),
                                        YoungFunction::logbump(2.0, 1.0), YoungFunction::exponential(),
                                        YoungFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0}, 50.0)};
  int cases = 0;
  int failures = 0;
  int nonsep = 0;
  int nonsep_above = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const YoungFunction& phi = phis[k % phis.size()];
    const MeasureSpec mu = random_measure(rng, true);
    const bool separable = k % 2 == 0;
    MinkowskiReport r;
    if (k < 60) {
      CellKernel ck;
      ck.x_breaks = sorted_breaks(rng, 2 + rng.index(4));
      ck.t_breaks = sorted_breaks(rng, 1 + rng.index(4));
      std::vector<double> g(ck.x_breaks.size() - 1), h(ck.t_breaks.size() - 1);
      for (double& v : g) v = rng.uniform(-2.0, 2.0);
      for (double& v : h) v = rng.uniform(0.0, 2.0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        ck.values.emplace_back();
        for (std::size_t j = 0; j < h.size(); ++j) ck.values[i].push_back(separable ? g[i] * h[j] : rng.uniform(-2.0, 2.0));
      }
      r = minkowski_check(ck, phi, mu);
    } else {
      const double c1 = rng.uniform(1.0, 6.0);
      const double c2 = rng.uniform(-3.0, 3.0);
      Kernel kern;
      if (separable)
        kern.eval = [c1, c2](double x, double t) { return std::sin(c1 * x + c2) * (1.0 + t * t); };
      else
        kern.eval = [c1, c2](double x, double t) { return std::cos(c1 * x * t + c2) - t; };
      r = minkowski_check(kern, phi, mu, gauss_legendre_nodes(0.0, 1.0, 4));
    }
    ++cases;
    if (!r.pass) ++failures;
    worst = std::max(worst, r.lhs / std::max(r.rhs, 1e-300));
    if (!separable) {
      ++nonsep;
      if (r.lhs > r.rhs * (1.0 + 1e-12)) ++nonsep_above;
    }
  }
  report(7, failures == 0,
         fmt("%g kernels, %g with LHS > 2 RHS + tol; max LHS/RHS = %.4f", cases, failures, worst));
  std::printf("  note: %d of %d non-separable kernels have LHS > RHS (the gauge is a norm, so none are expected)\n",
              nonsep_above, nonsep);
}

// 8. Young calculus
void criterion_8() {
  Rng rng(808);
  const std::vector<YoungFunction> phis{YoungFunction::power(1.5), YoungFunction::power(3.0, 0.5),
                                        YoungFunction::logbump(2.0, 1.0), YoungFunction::exponential(),
                                        YoungFunction::piecewise_linear({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0})};
  int young_bad = 0;
  int pairs = 0;
  double worst_trip = 0.0;
  for (const YoungFunction& phi : phis) {
    const YoungFunction psi = ComplementaryFunction(phi).as_young();
    std::vector<double> ts(10000), ss(10000), out(10000);
    for (int i = 0; i < 10000; ++i) {
      ts[i] = std::exp(rng.uniform(-5.0, 2.5));
      ss[i] = std::exp(rng.uniform(-5.0, 2.5));
    }
    parallel_for(ts.size(), workers(), [&](std::size_t i) {
      const double rhs = phi(ts[i]) + psi(ss[i]);
      out[i] = ts[i] * ss[i] - rhs - 1e-9 * (1.0 + std::abs(rhs));
    });
    for (double v : out) young_bad += v > 0.0;
    pairs += 10000;
    for (int i = 0; i < 200; ++i) {
      const double u = std::exp(rng.uniform(-10.0, 10.0));
      const double t = std::exp(rng.uniform(-6.0, 3.0));
      worst_trip = std::max(worst_trip, std::abs(phi(phi.inverse(u)) / u - 1.0));
      worst_trip = std::max(worst_trip, std::abs(phi.inverse(phi(t)) / t - 1.0));
    }
  }

  // supermultiplicativity of the inverse for the certified functions
  int super_bad = 0;
  int super_checked = 0;
  for (const YoungFunction& phi : {YoungFunction::power(2.5), YoungFunction::logbump(2.0, 1.0)}) {
    if (!certify_submultiplicative(phi, default_certification_grid()).pass()) {
      ++super_bad;
      continue;
    }
    for (int i = 0; i < 2000; ++i) {
      const double u = std::exp(rng.uniform(-8.0, 8.0));
      const double v = std::exp(rng.uniform(-8.0, 8.0));
      if (phi.inverse(u) * phi.inverse(v) > phi.inverse(u * v) * (1.0 + 1e-10)) ++super_bad;
      ++super_checked;
    }
  }

  // logbump: right derivative at the branch point is (e^{2a})^{p-1} (2a)^a (p + 1/2), left is p (e^{2a})^{p-1} (2a)^a
  bool branch_ok = true;
  double branch_err = 0.0;
  for (double p : {1.0, 2.0, 3.5}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const YoungFunction phi = YoungFunction::logbump(p, a);
      const double t = std::exp(2.0 * a);
      const double h = 1e-6 * t;
      const double right = (phi(t + h) - phi(t)) / h;
      const double left = (phi(t) - phi(t - h)) / h;
      const double base = std::pow(t, p - 1.0) * std::pow(2.0 * a, a);
      branch_err = std::max({branch_err, std::abs(right / (base * (p + 0.5)) - 1.0), std::abs(left / (base * p) - 1.0)});
      branch_ok = branch_ok && right >= left;
    }
  }
  branch_ok = branch_ok && branch_err < 1e-4;

  const bool pass = young_bad == 0 && worst_trip <= 1e-8 && super_bad == 0 && branch_ok;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "Young's inequality: %d of %d pairs violated; inverse round trip max err %.2e (tol 1e-8); inverse "
                "supermultiplicativity: %d of %d violated; logbump branch derivatives %s (finite-difference err %.1e)",
                young_bad, pairs, worst_trip, super_bad, super_checked, branch_ok ? "ordered" : "NOT ordered",
                branch_err);
  report(8, pass, buf);
}

// 9. ||f||_Phi^p = || |f|^p ||_Lambda
void criterion_9() {
  Rng rng(909);
  const double p = 2.0;
  const YoungFunction phi = YoungFunction::logbump(p, 1.0);
  const YoungFunction lambda = lambda_transform(phi, p).lambda;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const MeasureSpec mu = random_measure(rng, true);
    const PiecewiseLinearFunction f = random_pl(rng, 12).times(rng.uniform(0.5, 20.0));
    GeneralFunction fp{[&f, p](double x) { return std::pow(std::abs(f(x)), p); }, f.breakpoints_with_zero_crossings(),
                       std::pow(f.max_abs(), p)};
    const double lhs = std::pow(gauge_norm(f, phi, mu), p);
    const double rhs = gauge_norm(fp, lambda, mu);
    worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  report(9, worst <= 1e-6, fmt("p-th power identity on 50 functions, max rel err %.2e (tol 1e-6)", worst));
}

}  // namespace

int main() {
  guarded(1, "power norm equivalence", criterion_1);
  guarded(2, "characteristic identity", criterion_2);
  guarded(3, "K1 sandwich", criterion_3);
  guarded(4, "forward bound", criterion_4);
  guarded(5, "collapse and ordering", criterion_5);
  guarded(6, "degenerate weight example", criterion_6);
  guarded(7, "generalized Minkowski", criterion_7);
  guarded(8, "Young calculus", criterion_8);
  guarded(9, "p-th power identity", criterion_9);
  int failed = 0;
  for (const Line& l : lines) failed += !l.pass;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed ? 1 : 0;
}
