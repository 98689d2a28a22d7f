#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double l1;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const Integrand& f, double lo, double hi) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double half = 0.5 * (hi - lo);
  const double mid = lo + half;
  double err = 0.0;
  double l1 = 0.0;
  // max_depth 0: a single 7/15 pair on [-1, 1]; the error and L1 come back
  // unscaled, so they are rescaled here.
  const double v = Rule::integrate([&](double u) { return f(mid + half * u); }, -1.0, 1.0, 0, 0.0, &err, &l1);
  return Panel{lo, hi, half * v, half * err, half * l1};
}

// Global adaptive driver (bisect the panel with the largest error).
// Boost's own recursive driver compares unscaled panel errors against scaled
// tolerances on short intervals, so only its fixed rule is used.
QuadratureResult gauss_kronrod(const Integrand& f, double lo, double hi,
                               const QuadratureConfig& cfg, bool strict) {
  QuadratureResult out;
  if (!(hi > lo)) return out;
  std::priority_queue<Panel> heap;
  heap.push(kronrod_panel(f, lo, hi));
  double value = heap.top().value;
  double error = heap.top().error;
  double l1 = heap.top().l1;
  for (unsigned n = 1; n < cfg.max_subdivisions; ++n) {
    if (!std::isfinite(value)) break;
    if (error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) break;
    const Panel worst = heap.top();
    const double mid = worst.lo + 0.5 * (worst.hi - worst.lo);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    const Panel left = kronrod_panel(f, worst.lo, mid);
    const Panel right = kronrod_panel(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = error = l1 = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    l1 += heap.top().l1;
    heap.pop();
  }
  out.value = value;
  out.error = error;
  if (strict && std::isfinite(out.value)) {
    const double allowed = std::max(cfg.abs_tol, 100.0 * cfg.rel_tol * std::abs(l1));
    if (!(out.error <= allowed)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "adaptive quadrature on [" << lo << ", " << hi
          << "] did not converge: error estimate " << out.error
          << " exceeds " << allowed;
      fail(ErrorCode::QuadratureNonConvergence, msg.str());
    }
  }
  return out;
}

class LogSpaceIntegrator {
 public:
  LogSpaceIntegrator(const Integrand& log_f, const QuadratureConfig& cfg)
      : log_f_(log_f), cfg_(cfg) {}

  double run(double lo, double hi) {
    piece(lo, hi, sample(lo, hi), 0);
    return infinite_ ? kInf : total_;
  }

 private:
  struct Samples {
    double hmax = -kInf;
    double hmin = kInf;
    bool has_pos_inf = false;
  };

  Samples sample(double lo, double hi) const {
    Samples s;
    const double w = hi - lo;
    const std::array<double, 5> xs{lo, lo + 0.25 * w, lo + 0.5 * w, lo + 0.75 * w, hi};
    for (double x : xs) {
      const double h = log_f_(x);
      if (std::isnan(h)) continue;
      if (h == kInf) s.has_pos_inf = true;
      s.hmax = std::max(s.hmax, h);
      s.hmin = std::min(s.hmin, h);
    }
    return s;
  }

  void piece(double lo, double hi, const Samples& s, int depth) {
    if (infinite_) return;
    if (s.has_pos_inf) {
      infinite_ = true;
      return;
    }
    if (s.hmax == -kInf) return;
    const double width = hi - lo;
    if (total_ > -kInf && s.hmax + std::log(width) < total_ - cfg_.prune_margin) return;

    const double mid = lo + 0.5 * width;
    const bool tiny = !(mid > lo && mid < hi);
    if (s.hmax - s.hmin <= cfg_.max_log_variation || depth >= cfg_.max_split_depth || tiny) {
      const double shift = s.hmax;
      const auto scaled = [&](double x) {
        const double h = log_f_(x);
        if (std::isnan(h)) return 0.0;
        return std::exp(h - shift);
      };
      const bool strict = s.hmax - s.hmin <= cfg_.max_log_variation;
      const double v = gauss_kronrod(scaled, lo, hi, cfg_, strict).value;
      if (!std::isfinite(v)) {
        infinite_ = true;
        return;
      }
      if (v > 0.0) total_ = log_add_exp(total_, shift + std::log(v));
      return;
    }
    const Samples left = sample(lo, mid);
    const Samples right = sample(mid, hi);
    if (left.hmax >= right.hmax) {
      piece(lo, mid, left, depth + 1);
      piece(mid, hi, right, depth + 1);
    } else {
      piece(mid, hi, right, depth + 1);
      piece(lo, mid, left, depth + 1);
    }
  }

  const Integrand& log_f_;
  const QuadratureConfig& cfg_;
  double total_ = -kInf;
  bool infinite_ = false;
};

}  // namespace

double log_add_exp(double x, double y) noexcept {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  if (x == kInf || y == kInf) return kInf;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureConfig& cfg) {
  if (hi < lo) {
    QuadratureResult r = integrate(f, hi, lo, cfg);
    r.value = -r.value;
    return r;
  }
  return gauss_kronrod(f, lo, hi, cfg, true);
}

double log_integrate_exp(const Integrand& log_f, double lo, double hi,
                         const QuadratureConfig& cfg) {
  if (!(hi > lo)) return -kInf;
  return LogSpaceIntegrator(log_f, cfg).run(lo, hi);
}

double log_integrate_exp_toward(const Integrand& log_f, double endpoint,
                                double inner, const QuadratureConfig& cfg) {
  if (endpoint == inner) return -kInf;
  const double span = inner - endpoint;
  double total = -kInf;
  double prev = -kInf;
  double last_decay = 0.0;
  int negligible_run = 0;
  int growth_run = 0;
  double far = inner;
  for (int k = 0; k < 1100; ++k) {
    const double near = endpoint + span * std::ldexp(1.0, -(k + 1));
    if (near == endpoint || near == far) break;
    const double piece = span > 0 ? log_integrate_exp(log_f, near, far, cfg)
                                  : log_integrate_exp(log_f, far, near, cfg);
    if (piece == kInf) return kInf;
    if (piece > -kInf && prev > -kInf) {
      last_decay = piece - prev;
      growth_run = last_decay >= -1e-9 ? growth_run + 1 : 0;
      // 40 non-decaying halvings: the integrand grows at least like 1/|x - endpoint|.
      if (growth_run >= 40) return kInf;
    }
    total = log_add_exp(total, piece);
    if (total > -kInf && (piece == -kInf || piece < total + std::log(1e-17))) {
      if (++negligible_run >= 3) return total;
    } else {
      negligible_run = 0;
    }
    prev = piece;
    far = near;
  }
  // Out of resolution before the pieces became negligible.
  if (prev == -kInf) return total;
  if (last_decay >= -1e-9) return kInf;
  const double ratio = std::exp(last_decay);
  return log_add_exp(total, prev + std::log(ratio / (1.0 - ratio)));
}

}  // namespace orlicz
