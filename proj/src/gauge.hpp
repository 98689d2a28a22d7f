#pragma once

#include <functional>
#include <string>
#include <vector>

#include "functions.hpp"
#include "measure.hpp"
#include "quadrature.hpp"
#include "young.hpp"

namespace orlicz {

/// Integral of Phi(f/k) d mu over [a, b], atoms included.
/// Step functions use the exact finite sum; no quadrature is involved.
double modular(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k);
double modular(const PiecewiseLinearFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k,
               const QuadratureConfig& cfg = {});
double modular(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu, double k,
               const QuadratureConfig& cfg = {});

struct GaugeResult {
  double norm = 0.0;
  /// Modular at the returned k; <= 1 whenever norm is finite and positive.
  double modular_at_norm = 0.0;
  bool expansion_limit_hit = false;
};

/// inf{k > 0 : modular(k) <= 1} for a modular that is nonincreasing in k.
/// Brackets from `k0` by doubling/halving (at most 60 steps each way), then
/// bisects in log k to relative 1e-12. Returns +inf when the modular stays
/// above 1 up to k0 * 2^60 and 0 when it stays <= 1 down to k0 * 2^-60.
GaugeResult solve_gauge(const std::function<double(double)>& modular_of_k, double k0);

GaugeResult gauge_norm_detailed(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu);
GaugeResult gauge_norm_detailed(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                                const QuadratureConfig& cfg = {});

double gauge_norm(const StepFunction& f, const YoungFunction& phi, const MeasureSpec& mu);
double gauge_norm(const PiecewiseLinearFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                  const QuadratureConfig& cfg = {});
double gauge_norm(const GeneralFunction& f, const YoungFunction& phi, const MeasureSpec& mu,
                  const QuadratureConfig& cfg = {});

struct OrliczBracket {
  double lower = 0.0;
  double upper = 0.0;
  double gauge = 0.0;
  /// Index of the dual function attaining `lower` (-1 for an empty family).
  int best_index = -1;
};

/// lower = max over g of the integral of |f g| d mu, upper = 2 * gauge(f).
/// Every g must satisfy gauge(g, Psi) <= 1 + tol (HypothesisViolation
/// otherwise).
OrliczBracket orlicz_norm_bracket(const GeneralFunction& f, const YoungFunction& phi,
                                  const ComplementaryFunction& psi, const MeasureSpec& mu,
                                  const std::vector<GeneralFunction>& dual_family, double tol = 1e-8,
                                  const QuadratureConfig& cfg = {});

/// F(x, t) with the x-points where F(., t) may fail to be smooth.
struct Kernel {
  std::function<double(double, double)> eval;
  std::vector<double> x_breaks;
};

/// Quadrature rule in t: integral of g(t) dt ~ sum weights[j] g(nodes[j]).
struct TNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

TNodes gauss_legendre_nodes(double lo, double hi, std::size_t panels);

struct MinkowskiReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Set when an intermediate norm was not finite; pass is then false.
  bool flagged = false;
  std::string note;
};

/// lhs = gauge(x -> sum_j w_j F(x, t_j)), rhs = sum_j w_j gauge(F(., t_j));
/// passes iff lhs <= 2 rhs + tolerance.
MinkowskiReport minkowski_check(const Kernel& F, const YoungFunction& phi, const MeasureSpec& mu,
                                const TNodes& t, const QuadratureConfig& cfg = {});

/// F piecewise constant on the cells [x_i, x_{i+1}) x [t_j, t_{j+1});
/// values[i][j]. Both sides are exact finite sums.
struct CellKernel {
  std::vector<double> x_breaks;
  std::vector<double> t_breaks;
  std::vector<std::vector<double>> values;
};

MinkowskiReport minkowski_check(const CellKernel& F, const YoungFunction& phi, const MeasureSpec& mu);

}  // namespace orlicz
