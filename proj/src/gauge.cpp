#include "gauge.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHuge = 1e300;
constexpr int kExpansionSteps = 60;
constexpr double kRelTol = 1e-12;

double clamp_huge(double v) { return v > kHuge ? kInf : v; }

std::vector<double> cut_points(std::vector<double> pts, const MeasureSpec& mu) {
  pts.insert(pts.end(), mu.breakpoints().begin(), mu.breakpoints().end());
  pts.push_back(mu.a());
  pts.push_back(mu.b());
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (x < mu.a() || x > mu.b()) continue;
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  return out;
}

double sup_abs(const GeneralFunction& f, const MeasureSpec& mu) {
  if (f.scale_hint > 0.0) return f.scale_hint;
  double out = 0.0;
  const std::vector<double> cuts = cut_points(f.breaks, mu);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    for (int j = 0; j <= 8; ++j) out = std::max(out, std::abs(f.eval(cuts[i] + (cuts[i + 1] - cuts[i]) * j / 8.0)));
  }
  for (const Atom& atom : mu.atoms()) out = std::max(out, std::abs(f.eval(atom.location)));
  return out;
}

}  // namespace

double modular(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k) {
  if (!(k > 0.0)) fail(ErrorCode::InvalidArgument, "modular needs k > 0");
  const auto& br = f.breaks();
  const auto& lv = f.levels();
  double total = 0.0;
  for (std::size_t i = 0; i < lv.size(); ++i) {
    if (lv[i] == 0.0) continue;
    const double mass = mu.density_mass(br[i], br[i + 1]);
    if (mass <= 0.0) continue;
    total += phi(lv[i] / k) * mass;
  }
  for (const Atom& atom : mu.atoms()) {
    const double v = f(atom.location);
    if (v != 0.0) total += phi(v / k) * atom.mass;
  }
  return clamp_huge(total);
}

double modular(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k,
               const QuadratureConfig& cfg) {
  if (!(k > 0.0)) fail(ErrorCode::InvalidArgument, "modular needs k > 0");
  double total = 0.0;
  for (const Atom& atom : mu.atoms()) {
    const double v = f.eval(atom.location);
    if (v != 0.0) total += phi(v / k) * atom.mass;
  }
  if (!std::isfinite(total)) return kInf;
  if (mu.kind() == MeasureSpec::Kind::AtomsOnly) return clamp_huge(total);

  bool blew_up = false;
  const auto integrand = [&](double x) {
    const double d = mu.density(x);
    if (d == 0.0) return 0.0;
    const double v = f.eval(x);
    if (v == 0.0) return 0.0;
    const double y = phi(v / k) * d;
    if (!(y <= kHuge)) {
      blew_up = true;
      return 0.0;
    }
    return y;
  };
  const std::vector<double> cuts = cut_points(f.breaks, mu);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate(integrand, cuts[i], cuts[i + 1], cfg).value;
    if (blew_up) return kInf;
  }
  return clamp_huge(total);
}

double modular(const PiecewiseLinearFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k,
               const QuadratureConfig& cfg) {
  return modular(GeneralFunction::from(f), phi, mu, k, cfg);
}

GaugeResult solve_gauge(const std::function<double(double)>& modular_of_k, double k0) {
  GaugeResult out;
  if (!(k0 > 0.0) || !std::isfinite(k0)) k0 = 1.0;
  double lo = k0;
  double hi = k0;
  double m_hi = modular_of_k(hi);
  if (m_hi > 1.0) {
    int steps = 0;
    while (m_hi > 1.0) {
      if (++steps > kExpansionSteps) {
        out.norm = kInf;
        out.modular_at_norm = m_hi;
        out.expansion_limit_hit = true;
        return out;
      }
      lo = hi;
      hi *= 2.0;
      m_hi = modular_of_k(hi);
    }
  } else {
    int steps = 0;
    for (;;) {
      if (++steps > kExpansionSteps) {
        out.norm = 0.0;
        out.modular_at_norm = 0.0;
        return out;
      }
      const double trial = lo * 0.5;
      const double m = modular_of_k(trial);
      if (m > 1.0) {
        lo = trial;
        break;
      }
      hi = trial;
      m_hi = m;
      lo = trial;
    }
  }
  // Invariant: modular(lo) > 1 >= modular(hi).
  while (hi - lo > kRelTol * hi) {
    const double mid = std::sqrt(lo * hi);
    if (!(mid > lo && mid < hi)) break;
    const double m = modular_of_k(mid);
    if (m > 1.0) {
      lo = mid;
    } else {
      hi = mid;
      m_hi = m;
    }
  }
  out.norm = hi;
  out.modular_at_norm = m_hi;
  return out;
}

GaugeResult gauge_norm_detailed(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu) {
  return solve_gauge([&](double k) { return modular(f, phi, mu, k); }, f.max_abs());
}

GaugeResult gauge_norm_detailed(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                                const QuadratureConfig& cfg) {
  return solve_gauge([&](double k) { return modular(f, phi, mu, k, cfg); }, sup_abs(f, mu));
}

double gauge_norm(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu) {
  return gauge_norm_detailed(f, phi, mu).norm;
}

double gauge_norm(const PiecewiseLinearFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                  const QuadratureConfig& cfg) {
  return gauge_norm_detailed(GeneralFunction::from(f), phi, mu, cfg).norm;
}

double gauge_norm(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                  const QuadratureConfig& cfg) {
  return gauge_norm_detailed(f, phi, mu, cfg).norm;
}

OrliczBracket orlicz_norm_bracket(const GeneralFunction& f, const YoungFunction& phi,
                                  const ComplementaryFunction& psi, const MeasureSpec& mu,
                                  const std::vector<GeneralFunction>& dual_family, double tol,
                                  const QuadratureConfig& cfg) {
  OrliczBracket out;
  out.gauge = gauge_norm(f, phi, mu, cfg);
  out.upper = 2.0 * out.gauge;
  const YoungFunction psi_young = psi.as_young();
  for (std::size_t i = 0; i < dual_family.size(); ++i) {
    const GeneralFunction& g = dual_family[i];
    const double g_norm = gauge_norm(g, psi_young, mu, cfg);
    if (!(g_norm <= 1.0 + tol))
      fail(ErrorCode::HypothesisViolation, "dual family member " + std::to_string(i) + " has Psi-gauge above 1");
    std::vector<double> breaks = f.breaks;
    breaks.insert(breaks.end(), g.breaks.begin(), g.breaks.end());
    const GeneralFunction product{[&](double x) { return std::abs(f.eval(x) * g.eval(x)); }, std::move(breaks), 0.0};
    const double pairing = integrate_against(product, mu, cfg);
    if (out.best_index < 0 || pairing > out.lower) {
      out.lower = pairing;
      out.best_index = static_cast<int>(i);
    }
  }
  return out;
}

TNodes gauss_legendre_nodes(double lo, double hi, std::size_t panels) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  if (!(hi > lo) || panels == 0) fail(ErrorCode::InvalidArgument, "t-range must be nonempty");
  TNodes out;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const double width = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = lo + (static_cast<double>(p) + 0.5) * width;
    const double h = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      // boost stores the nonnegative half of the symmetric rule
      if (abscissa[i] == 0.0) {
        out.nodes.push_back(c);
        out.weights.push_back(h * weights[i]);
        continue;
      }
      out.nodes.push_back(c - h * abscissa[i]);
      out.weights.push_back(h * weights[i]);
      out.nodes.push_back(c + h * abscissa[i]);
      out.weights.push_back(h * weights[i]);
    }
  }
  return out;
}

namespace {

MinkowskiReport finish(double lhs, double rhs) {
  MinkowskiReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = std::max(1e-9, 1e-8 * std::abs(rhs));
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    r.flagged = true;
    r.pass = false;
    r.note = "non-finite intermediate norm";
    return r;
  }
  r.pass = lhs <= 2.0 * rhs + r.tolerance;
  return r;
}

}  // namespace

MinkowskiReport minkowski_check(const Kernel& F, const YoungFunction& phi, const MeasureSpec& mu,
                                const TNodes& t, const QuadratureConfig& cfg) {
  if (t.nodes.size() != t.weights.size()) fail(ErrorCode::InvalidArgument, "t nodes and weights differ in length");
  for (double w : t.weights) {
    if (!(w >= 0.0)) fail(ErrorCode::InvalidArgument, "t weights must be nonnegative");
  }
  double rhs = 0.0;
  for (std::size_t j = 0; j < t.nodes.size(); ++j) {
    const double tj = t.nodes[j];
    const GeneralFunction slice{[&F, tj](double x) { return F.eval(x, tj); }, F.x_breaks, 0.0};
    rhs += t.weights[j] * gauge_norm(slice, phi, mu, cfg);
  }
  const GeneralFunction integrated{[&](double x) {
                                     double s = 0.0;
                                     for (std::size_t j = 0; j < t.nodes.size(); ++j)
                                       s += t.weights[j] * F.eval(x, t.nodes[j]);
                                     return s;
                                   },
                                   F.x_breaks, 0.0};
  return finish(gauge_norm(integrated, phi, mu, cfg), rhs);
}

MinkowskiReport minkowski_check(const CellKernel& F, const YoungFunction& phi, const MeasureSpec& mu) {
  const std::size_t nx = F.x_breaks.size() < 2 ? 0 : F.x_breaks.size() - 1;
  const std::size_t nt = F.t_breaks.size() < 2 ? 0 : F.t_breaks.size() - 1;
  if (nx == 0 || nt == 0 || F.values.size() != nx)
    fail(ErrorCode::InvalidArgument, "cell kernel needs values[x cell][t cell]");
  std::vector<double> integrated(nx, 0.0);
  double rhs = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    const double width = F.t_breaks[j + 1] - F.t_breaks[j];
    if (!(width > 0.0)) fail(ErrorCode::InvalidArgument, "cell kernel t breaks must increase");
    std::vector<double> column(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      if (F.values[i].size() != nt) fail(ErrorCode::InvalidArgument, "cell kernel row has the wrong length");
      column[i] = F.values[i][j];
      integrated[i] += width * column[i];
    }
    rhs += width * gauge_norm(StepFunction(F.x_breaks, column), phi, mu);
  }
  return finish(gauge_norm(StepFunction(F.x_breaks, integrated), phi, mu), rhs);
}

}  // namespace orlicz
