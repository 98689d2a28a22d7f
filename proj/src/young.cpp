#include "young.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/tools/minima.hpp>

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCertificateRelTol = 1e-12;

std::string format_label(const char* kind, std::initializer_list<std::pair<const char*, double>> params) {
  std::ostringstream out;
  out << kind << '(';
  bool first = true;
  for (const auto& [name, value] : params) {
    if (!first) out << ", ";
    out << name << '=' << value;
    first = false;
  }
  out << ')';
  return out.str();
}

}  // namespace

YoungFunction YoungFunction::power(double q, double scale) {
  if (!(q >= 1.0) || !std::isfinite(q)) fail(ErrorCode::InvalidArgument, "power Young function needs q >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) fail(ErrorCode::InvalidArgument, "power Young function needs scale > 0");
  YoungFunction phi;
  phi.label_ = scale == 1.0 ? format_label("power", {{"q", q}})
                            : format_label("power", {{"q", q}, {"scale", scale}});
  phi.eval_ = [q, scale](double t) { return scale * std::pow(t, q); };
  const double log_scale = std::log(scale);
  phi.log_eval_ = [q, log_scale](double s) { return log_scale + q * s; };
  return phi;
}

YoungFunction YoungFunction::logbump(double p, double alpha) {
  if (!(p >= 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "logbump needs p >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "logbump needs alpha > 0");
  YoungFunction phi;
  phi.label_ = format_label("logbump", {{"p", p}, {"alpha", alpha}});
  const double branch = std::exp(2.0 * alpha);
  const double low_factor = std::pow(2.0 * alpha, alpha);
  phi.eval_ = [p, alpha, branch, low_factor](double t) {
    if (t >= branch) return std::pow(t, p) * std::pow(std::log(t), alpha);
    return std::pow(t, p) * low_factor;
  };
  const double log_low_factor = alpha * std::log(2.0 * alpha);
  phi.log_eval_ = [p, alpha, log_low_factor](double s) {
    if (s >= 2.0 * alpha) return p * s + alpha * std::log(s);
    return p * s + log_low_factor;
  };
  return phi;
}

YoungFunction YoungFunction::exponential() {
  YoungFunction phi;
  phi.label_ = "exp";
  phi.eval_ = [](double t) { return std::expm1(t); };
  phi.log_eval_ = [](double s) {
    if (s == -kInf) return -kInf;
    const double t = std::exp(s);
    if (t > 40.0) return t + std::log1p(-std::exp(-t));
    return std::log(std::expm1(t));
  };
  return phi;
}

YoungFunction YoungFunction::piecewise_linear(std::vector<double> knots, std::vector<double> values,
                                              double cap) {
  if (knots.size() != values.size() || knots.size() < 2)
    fail(ErrorCode::InvalidArgument, "piecewise Young function needs matching knots/values (>= 2)");
  if (knots.front() != 0.0 || values.front() != 0.0)
    fail(ErrorCode::InvalidArgument, "piecewise Young function must start at (0, 0)");
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i] > knots[i - 1])) fail(ErrorCode::InvalidArgument, "piecewise knots must increase");
    const double slope = (values[i] - values[i - 1]) / (knots[i] - knots[i - 1]);
    if (slope < prev_slope - 1e-12 * std::max(1.0, std::abs(prev_slope)))
      fail(ErrorCode::InvalidArgument, "piecewise Young function slopes must be nondecreasing (convexity)");
    prev_slope = slope;
  }
  if (!(prev_slope > 0.0)) fail(ErrorCode::InvalidArgument, "piecewise Young function must grow without bound");
  if (!(cap > 0.0)) fail(ErrorCode::InvalidArgument, "cap must be positive");

  YoungFunction phi;
  std::ostringstream label;
  label << "piecewise(" << knots.size() << " knots";
  if (std::isfinite(cap)) label << ", cap=" << cap;
  label << ')';
  phi.label_ = label.str();
  phi.finite_on_reals_ = !std::isfinite(cap);
  phi.strictly_increasing_ = std::isfinite(cap) ? false : values[1] > 0.0;
  phi.eval_ = [knots = std::move(knots), values = std::move(values), cap](double t) {
    if (t > cap) return kInf;
    const auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i >= knots.size()) i = knots.size() - 1;
    const std::size_t lo = i - 1;
    const double slope = (values[i] - values[lo]) / (knots[i] - knots[lo]);
    return values[lo] + slope * (t - knots[lo]);
  };
  return phi;
}

YoungFunction YoungFunction::custom(std::string label, Evaluator eval, bool finite_on_reals,
                                    bool strictly_increasing, Evaluator log_eval) {
  YoungFunction phi;
  phi.label_ = std::move(label);
  phi.eval_ = std::move(eval);
  phi.log_eval_ = std::move(log_eval);
  phi.finite_on_reals_ = finite_on_reals;
  phi.strictly_increasing_ = strictly_increasing;
  return phi;
}

double YoungFunction::log_eval(double s) const {
  if (log_eval_) return log_eval_(s);
  if (s == -kInf) return -kInf;
  return std::log(eval_(std::exp(s)));
}

double YoungFunction::inverse(double u) const {
  if (!strictly_increasing_)
    fail(ErrorCode::NotInvertible, label_ + " is not strictly increasing on [0, inf)");
  if (!(u >= 0.0)) fail(ErrorCode::InvalidArgument, "inverse needs u >= 0");
  if (u == 0.0) return 0.0;
  if (!std::isfinite(u)) fail(ErrorCode::BracketFailure, "no finite bracket for u = inf");

  double lo = 1.0;
  double hi = 1.0;
  if (eval_(1.0) < u) {
    int n = 0;
    while (eval_(hi) < u) {
      lo = hi;
      hi *= 2.0;
      if (++n > 1100 || !std::isfinite(hi))
        fail(ErrorCode::BracketFailure, "inverse bracket expansion exceeded the representable range");
    }
  } else {
    int n = 0;
    while (eval_(lo) >= u) {
      hi = lo;
      lo *= 0.5;
      if (++n > 1100 || lo == 0.0) return 0.0;
    }
  }
  // Phi(lo) < u <= Phi(hi).
  for (int i = 0; i < 2000 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = eval_(mid);
    if (v == u) return mid;
    if (v < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(eval_(lo) - u) <= std::abs(eval_(hi) - u) ? lo : hi;
}

double YoungFunction::log_inverse(double log_u) const {
  if (!strictly_increasing_)
    fail(ErrorCode::NotInvertible, label_ + " is not strictly increasing on [0, inf)");
  if (std::isnan(log_u)) fail(ErrorCode::InvalidArgument, "log_inverse of NaN");
  if (log_u == kInf) return kInf;
  if (log_u == -kInf) return -kInf;

  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  if (log_eval(0.0) < log_u) {
    while (log_eval(hi) < log_u) {
      lo = hi;
      hi += step;
      step *= 2.0;
      if (!std::isfinite(hi)) fail(ErrorCode::BracketFailure, "log-inverse bracket overflow");
    }
  } else {
    while (log_eval(lo) >= log_u) {
      hi = lo;
      lo -= step;
      step *= 2.0;
      if (!std::isfinite(lo)) return -kInf;
    }
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) break;
    if (log_eval(mid) < log_u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double eval_young(const YoungFunction& phi, double t) { return phi(t); }

double invert_young(const YoungFunction& phi, double u) { return phi.inverse(u); }

ConjugateExponent ConjugateExponent::of(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "conjugate exponent needs 1 < p < inf");
  return ConjugateExponent{p, p / (p - 1.0)};
}

double ComplementaryFunction::operator()(double s) const {
  s = std::abs(s);
  if (s == 0.0) return 0.0;
  const auto objective = [&](double t) { return t * s - phi_(t); };
  double top = 1.0;
  int n = 0;
  while (objective(2.0 * top) > objective(top)) {
    top *= 2.0;
    if (++n > 200) {
      std::ostringstream msg;
      msg << "complementary sup of " << phi_.label() << " unbounded at s = " << s;
      fail(ErrorCode::UnboundedSup, msg.str());
    }
  }
  const auto negated = [&](double t) { return -objective(t); };
  boost::uintmax_t max_iter = 1000;
  const auto [t_star, neg_value] = boost::math::tools::brent_find_minima(
      negated, 0.0, 2.0 * top, std::numeric_limits<double>::digits, max_iter);
  (void)t_star;
  return std::max(0.0, -neg_value);
}

YoungFunction ComplementaryFunction::as_young() const {
  ComplementaryFunction psi = *this;
  return YoungFunction::custom(
      "complementary(" + phi_.label() + ")",
      [psi](double s) {
        try {
          return psi(s);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::UnboundedSup) return kInf;
          throw;
        }
      },
      false, false);
}

double complementary(const YoungFunction& phi, double s) {
  if (!phi.finite_on_reals())
    fail(ErrorCode::InvalidArgument, "complementary function needs a finite-valued Young function");
  return ComplementaryFunction(phi)(s);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) fail(ErrorCode::InvalidArgument, "log_spaced needs 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_certification_grid() { return log_spaced(1e-6, 1e6, 512); }

namespace {

void record_pair(const YoungFunction& phi, double s, double t, SubmultiplicativityReport& report) {
  ++report.pairs_checked;
  const double lhs = phi(s * t);
  const double rhs = phi(s) * phi(t);
  if (lhs > rhs * (1.0 + kCertificateRelTol) + 1e-300) {
    ++report.violation_count;
    if (report.violations.size() < 64) report.violations.push_back({s, t, lhs, rhs});
  }
}

}  // namespace

SubmultiplicativityReport certify_submultiplicative(const YoungFunction& phi,
                                                    const std::vector<double>& grid) {
  SubmultiplicativityReport report;
  report.label = phi.label();
  for (double s : grid) {
    for (double t : grid) record_pair(phi, s, t, report);
  }
  return report;
}

SubmultiplicativityReport certify_submultiplicative(
    const YoungFunction& phi, const std::vector<std::pair<double, double>>& pairs) {
  SubmultiplicativityReport report;
  report.label = phi.label();
  for (const auto& [s, t] : pairs) record_pair(phi, s, t, report);
  return report;
}

ConvexityCertificate certify_convexity(const YoungFunction& phi, const std::vector<double>& grid) {
  ConvexityCertificate cert;
  cert.label = phi.label();
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = phi(grid[i]);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      ++cert.pairs_checked;
      const double avg = 0.5 * (values[i] + values[j]);
      const double mid = phi(0.5 * (grid[i] + grid[j]));
      if (mid > avg * (1.0 + kCertificateRelTol) + 1e-300) {
        if (cert.violations.size() < 64) cert.violations.push_back({grid[i], grid[j], mid - avg});
      }
    }
  }
  return cert;
}

ConvexityViolation::ConvexityViolation(ConvexityWitness witness)
    : Error(ErrorCode::ConvexityViolation,
            [&] {
              std::ostringstream msg;
              msg.precision(17);
              msg << "midpoint convexity fails at s=" << witness.s << ", t=" << witness.t
                  << " (gap " << witness.gap << ")";
              return msg.str();
            }()),
      witness_(witness) {}

LambdaTransform lambda_transform(const YoungFunction& phi, double p, const std::vector<double>& grid) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "lambda transform needs p > 1");
  const double inv_p = 1.0 / p;
  YoungFunction lambda = YoungFunction::custom(
      "lambda(" + phi.label() + ", p=" + [&] {
        std::ostringstream o;
        o << p;
        return o.str();
      }() + ")",
      [phi, inv_p](double t) { return phi(std::pow(t, inv_p)); }, phi.finite_on_reals(),
      phi.strictly_increasing_on_nonneg(), [phi, inv_p](double s) { return phi.log_eval(s * inv_p); });
  ConvexityCertificate cert = certify_convexity(lambda, grid);
  if (!cert.pass()) throw ConvexityViolation(cert.violations.front());
  return LambdaTransform{std::move(lambda), std::move(cert)};
}

LambdaTransform lambda_transform(const YoungFunction& phi, double p) {
  return lambda_transform(phi, p, default_certification_grid());
}

}  // namespace orlicz
