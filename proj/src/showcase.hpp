#pragma once

#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "measure.hpp"
#include "young.hpp"

namespace orlicz {

/// The degenerate-weight example on [0, b] with w(x) = 2 e^{-1/x^2} / x^3 and
/// mu = nu = w.
struct ExampleConfig {
  double b = 1.0;
  double p = 2.0;
  double q = 2.5;
  double alpha = 1.0;
  /// Any value in (1/q, 1/p); the midpoint when unset.
  std::optional<double> eps;
  /// 512 geometric points toward 0 reaching x = 1e-3 b.
  ScanGrid grid = default_grid();
  unsigned workers = 1;
  QuadratureConfig quad;

  static ScanGrid default_grid();
  void validate() const;
  double epsilon() const;
};

/// expdeg(0, b): cumulative e^{-1/x^2}.
MeasureSpec example_weight(double b = 1.0);

struct OverlayPoint {
  double x;
  double t0;
  double log_supremand;
  /// log of 2^{1-p'} g(t0) (int_x^{t0} t^{3(p'-1)} dt)^{1/p'}
  double log_lower_bound;
  bool holds;
};

struct InverseAsymptotic {
  double x;
  /// log Phi^{-1}(e^{1/(2x^2)})
  double log_inverse;
  /// log of (T / ln(T)^alpha)^{1/p} at T = e^{1/(2x^2)}
  double log_approximation;
};

struct ExampleReport {
  ExampleConfig config;
  double eps = 0.0;
  ConstantReport k_pp;
  ConstantReport k_pq;
  ConstantReport k_phi;
  SubmultiplicativityReport submultiplicative;
  ConvexityCertificate lambda_convexity;
  /// Along the geometric subgrid toward 0 of the diverging term.
  double log_growth = 0.0;
  std::vector<OverlayPoint> overlay;
  std::vector<InverseAsymptotic> inverse_asymptotics;
  std::vector<std::string> inconsistencies;

  /// (finite-stable, diverging, finite-stable) with passing certificates and overlay.
  bool consistent() const noexcept { return inconsistencies.empty(); }
};

ExampleReport run_example(const ExampleConfig& cfg);

/// g(t0) = (e^{-1/b^2} - e^{-eps p/x^2}) e^{(eps - 1/q)/x^2}, in log form.
double log_g_t0(const ExampleConfig& cfg, double eps, double x);

struct SplitRow {
  double x;
  double delta;
  /// The two pieces integrated in u = -1/t^2 (log values).
  double log_i;
  double log_ii;
  /// [1 - e^{-(p'-1)(1/x^2 - 1/delta^2)}] / (p' - 1)
  double log_i_bound;
  /// 2 x^{-4 alpha (p'-1)} e^{-(p'-1)(1/x^2 - 1/delta^2)} int_delta^b t^{3(p'-1)} dt
  double log_ii_bound;
  /// int_x^b e^{-(p'-1)(1/x^2 - 1/t^2)} x^{-4 alpha (p'-1)} t^{3(p'-1)} dt, integrated in t
  double log_tail;
};

struct SplitReport {
  std::vector<SplitRow> rows;
  bool i_bounded = true;
  bool ii_below_bound = true;
  bool ii_decreasing = true;
  bool tail_bounded = true;
  bool delta_above_x = true;

  bool pass() const noexcept { return i_bounded && ii_below_bound && ii_decreasing && tail_bounded && delta_above_x; }
};

/// One row of the I + II split at x.
SplitRow split_integral_row(const ExampleConfig& cfg, double x);

/// Rows at `points` log-spaced x from x_hi down to x_lo.
SplitReport split_integral_check(const ExampleConfig& cfg, double x_hi = 1e-1, double x_lo = 1e-3,
                                 std::size_t points = 13);

}  // namespace orlicz
