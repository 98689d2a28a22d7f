#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "functions.hpp"
#include "measure.hpp"
#include "young.hpp"

namespace orlicz {

struct PoincareInstance {
  MeasureSpec mu;
  MeasureSpec nu;
  MeasureSpec w;
  double p = 1.0;
  YoungFunction phi;

  /// Checks shared endpoints, p >= 1 and nu[a, b] > 0.
  void validate() const;
};

struct RatioRecord {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; 0 by convention when both vanish.
  double ratio = 0.0;
};

/// lhs = gauge(f - nu-average of f), rhs = (sum |slope|^p w[segment])^{1/p}
/// computed from the exact piecewise-constant derivative.
RatioRecord poincare_ratio(const PoincareInstance& inst, const PiecewiseLinearFunction& f,
                           const std::string& id = "f", const QuadratureConfig& cfg = {});

inline constexpr std::size_t kExtremalKnots = 4096;
inline constexpr double kDefaultRegularization = 1e9;

/// The p = 1 extremal family f_eps around alpha, built with w_n = w + 1/n.
/// Slopes are cell averages of the defining integrand on kExtremalKnots cells
/// covering [alpha - eps, alpha + eps].
PiecewiseLinearFunction extremal_p1(const PoincareInstance& inst, double alpha, double eps,
                                    double n = kDefaultRegularization, const QuadratureConfig& cfg = {});

/// (1 / w_n(alpha)) || (nu[alpha,b]/nu[a,alpha]) chi_[a,alpha] + chi_[alpha,b] ||, the eps -> 0
/// limit of the deviation norm of f_eps.
double extremal_p1_limit(const PoincareInstance& inst, double alpha, double n = kDefaultRegularization);

struct ExtremalPair {
  PiecewiseLinearFunction f1;
  PiecewiseLinearFunction f2;
  /// (1/nu[a,b]) (int_a^alpha nu[a,z]^{p'} w_n^{1-p'})^{1/p'} [Phi^{-1}(1/mu[alpha,b])]^{-1}
  double lower_bound_1 = 0.0;
  /// mirrored quantity for f2
  double lower_bound_2 = 0.0;
};

ExtremalPair extremal_p(const PoincareInstance& inst, double alpha, double n = kDefaultRegularization,
                        const QuadratureConfig& cfg = {});

struct ExtremalRow {
  double alpha = 0.0;
  double lower_bound_1 = 0.0;
  double ratio_1 = 0.0;
  double lower_bound_2 = 0.0;
  double ratio_2 = 0.0;
};

std::vector<ExtremalRow> extremal_scan(const PoincareInstance& inst, const std::vector<double>& alphas,
                                       double n = kDefaultRegularization, unsigned workers = 1,
                                       const QuadratureConfig& cfg = {});

struct FamilyOptions {
  /// Every fourth function concentrates its knots and slopes near an endpoint.
  bool spikes = true;
};

/// Deterministic piecewise-linear functions on [a, b]: segment counts uniform
/// in {1..knot_budget}, interior knots uniform, slopes uniform in [-1, 1],
/// start value uniform in [-1, 1]. Spike variants place knots geometrically
/// toward a or b and scale slopes by sqrt((b - a) / width).
std::vector<PiecewiseLinearFunction> random_family(std::uint64_t seed, std::size_t count, std::size_t knot_budget,
                                                   double a, double b, const FamilyOptions& opt = {});

struct NamedFunction {
  std::string id;
  PiecewiseLinearFunction f;
};

struct CertificationReport {
  double p = 1.0;
  std::string phi_label;
  /// 2 K_1 (p = 1) or C0 K_forward (p > 1); NaN when no bound applies.
  double bound = std::numeric_limits<double>::quiet_NaN();
  std::string bound_kind;
  double tolerance = 1e-6;
  bool hypotheses_ok = true;
  std::string hypothesis_note;
  std::optional<ConstantReport> k1;
  std::optional<ConstantReport> k_forward;
  std::optional<ConstantReport> k_backward;
  double c0 = std::numeric_limits<double>::quiet_NaN();
  std::vector<RatioRecord> records;
  std::vector<bool> within_bound;
  double max_ratio = 0.0;
  std::string max_ratio_id;
  std::vector<std::string> violations;

  bool pass() const noexcept { return violations.empty(); }
};

struct CertifyOptions {
  ScanOptions scan;
  unsigned workers = 1;
  QuadratureConfig quad;
};

/// Evaluates every family member and checks it against the sufficiency bound.
/// Violations are reported (never thrown) so the caller sees all witnesses.
CertificationReport certify_instance(const PoincareInstance& inst, const std::vector<NamedFunction>& family,
                                     const CertifyOptions& opt = {});

}  // namespace orlicz
