#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "measure.hpp"
#include "quadrature.hpp"
#include "young.hpp"

namespace orlicz {

enum class GridPolicy { Uniform, GeometricA, GeometricB, Union };

const char* to_string(GridPolicy policy) noexcept;
GridPolicy grid_policy_from_string(const std::string& name);

/// Describes the points where a supremum over a < x < b is sampled.
///
/// Uniform points are a + i h, i = 1..n with h = (b - a)/(n + 1). Geometric
/// points sit at distance (b - a)/2 * rho^{k/(m-1)}, k = 0..m-1, from the
/// endpoint, with rho = 2 * geometric_min_fraction. Doubling (n -> 2n + 1,
/// m -> 2m - 1) therefore nests the previous grid.
struct ScanGrid {
  GridPolicy policy = GridPolicy::Union;
  std::size_t uniform_points = 512;
  std::size_t geometric_points = 64;
  double geometric_min_fraction = 1e-3;
  /// One extra pass of points around the running argmax.
  bool refine = true;
  std::size_t refine_points = 16;

  ScanGrid doubled() const;
  std::vector<double> points(double a, double b) const;
  std::vector<double> geometric_toward(double a, double b, bool toward_a) const;
};

enum class Classification { FiniteStable, Diverging, Inconclusive };

const char* to_string(Classification c) noexcept;

struct TracePoint {
  double x;
  double supremand;
  double log_supremand;
};

/// One supremum term of a characterizing constant.
struct SupTerm {
  std::string name;
  double sup = 0.0;
  double log_sup = -std::numeric_limits<double>::infinity();
  double argmax = 0.0;
  std::vector<TracePoint> trace;
  Classification classification = Classification::Inconclusive;
  /// Sup on the doubled grid (NaN when not computed).
  double log_sup_doubled = std::numeric_limits<double>::quiet_NaN();
  std::string diverging_endpoint;
};

struct ConstantReport {
  std::string name;
  double value = 0.0;
  double log_value = -std::numeric_limits<double>::infinity();
  double normalizer = 1.0;
  Classification classification = Classification::Inconclusive;
  std::vector<SupTerm> terms;
  ScanGrid grid;
  std::vector<std::string> diagnostics;
};

struct ScanOptions {
  ScanGrid grid;
  QuadratureConfig quad;
  unsigned workers = 1;
  /// Recompute on the doubled grid for the finite-stable test.
  bool classify = true;
  /// Run the submultiplicativity / Lambda-convexity certificates first.
  bool check_hypotheses = true;
};

/// Classification thresholds.
inline constexpr std::size_t kDivergenceWindow = 8;
inline constexpr double kDivergenceFactor = 1e6;
inline constexpr double kStabilityTolerance = 0.01;

/// 2 / Phi^{-1}(1/2).
double c0_of_phi(const YoungFunction& phi);

ConstantReport k1_phi(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w,
                      const YoungFunction& phi, const ScanOptions& opt = {});

ConstantReport k_p_phi_forward(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p,
                               const YoungFunction& phi, const ScanOptions& opt = {});

ConstantReport k_p_phi_backward(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p,
                                const YoungFunction& phi, const ScanOptions& opt = {});

ConstantReport k_pq_classical(const MeasureSpec& mu, const MeasureSpec& nu, const MeasureSpec& w, double p,
                              double q, const ScanOptions& opt = {});

/// A weight tau given by its logarithm; `breaks` lists points where it may jump.
struct LogWeight {
  std::function<double(double)> log_eval;
  std::vector<double> breaks;

  static LogWeight one();
  /// t -> nu[a, t]
  static LogWeight left_mass(const MeasureSpec& nu);
  /// t -> nu[t, b]
  static LogWeight right_mass(const MeasureSpec& nu);
};

/// sup_x [Phi^{-1}(mu[x,b]^{-1/2})]^{-2} (int_a^x tau^{p'} w^{1-p'})^{1/p'}
ConstantReport hardy_s_constant(double p, const YoungFunction& phi, const MeasureSpec& mu, const LogWeight& tau,
                                const MeasureSpec& w, const ScanOptions& opt = {});
/// sup_x [Phi^{-1}(mu[a,x]^{-1/2})]^{-2} (int_x^b tau^{p'} w^{1-p'})^{1/p'}
ConstantReport hardy_t_constant(double p, const YoungFunction& phi, const MeasureSpec& mu, const LogWeight& tau,
                                const MeasureSpec& w, const ScanOptions& opt = {});

/// Checks the hypotheses of the forward bound; throws HypothesisViolation.
void require_forward_hypotheses(const YoungFunction& phi, double p);

/// log of int_a^x tau^{p'} w^{1-p'} (left) or int_x^b (right) at each x,
/// by prefix sums over the sorted points.
std::vector<double> log_inner_integrals(const std::vector<double>& xs, double p, const LogWeight& tau,
                                        const MeasureSpec& w, bool from_left, const QuadratureConfig& quad,
                                        unsigned workers);

/// Applies `body(i)` for i in [0, n) on up to `workers` threads.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace orlicz
