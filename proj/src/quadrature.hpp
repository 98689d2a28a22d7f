#pragma once

#include <functional>

namespace orlicz {

/// Tolerances shared by every integration in the toolkit.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  /// Subinterval budget of the global adaptive Gauss-Kronrod driver.
  unsigned max_subdivisions = 2000;
  /// log-space integration: pieces are split until the log-integrand varies
  /// by at most this much across the piece.
  double max_log_variation = 2.0;
  int max_split_depth = 70;
  /// Pieces whose log-contribution sits this far below the running total are
  /// dropped.
  double prune_margin = 45.0;
};

using Integrand = std::function<double(double)>;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) on a finite interval. Throws
/// QuadratureNonConvergence when the error estimate misses the tolerance.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureConfig& cfg = {});

/// log of the integral of exp(log_f) over [lo, hi]. Returns -inf for an
/// identically vanishing integrand and +inf when log_f is +inf somewhere.
double log_integrate_exp(const Integrand& log_f, double lo, double hi,
                         const QuadratureConfig& cfg = {});

/// Same as log_integrate_exp over the interval between `endpoint` and `inner`,
/// where log_f may be singular at `endpoint`. The interval is cut into pieces
/// shrinking geometrically toward the endpoint; the result is +inf when the
/// pieces stop decaying (non-integrable singularity).
double log_integrate_exp_toward(const Integrand& log_f, double endpoint,
                                double inner, const QuadratureConfig& cfg = {});

double log_add_exp(double x, double y) noexcept;

}  // namespace orlicz
