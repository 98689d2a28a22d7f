#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace orlicz {

/// An even convex function with Phi(0) = 0, possibly jumping to +inf.
///
/// Values are immutable after construction. Besides the plain evaluator each
/// instance carries a log-space evaluator s -> log Phi(e^s), used by the
/// characterizing constants where arguments span hundreds of decades.
class YoungFunction {
 public:
  using Evaluator = std::function<double(double)>;

  /// scale * |t|^q, q >= 1.
  static YoungFunction power(double q, double scale = 1.0);
  /// |t|^p (ln|t|)^alpha above e^{2 alpha}, |t|^p (2 alpha)^alpha below.
  static YoungFunction logbump(double p, double alpha);
  /// e^{|t|} - 1.
  static YoungFunction exponential();
  /// Linear interpolation of (knots, values) starting at (0, 0), extended by
  /// the last slope and set to +inf beyond `cap`.
  static YoungFunction piecewise_linear(std::vector<double> knots,
                                        std::vector<double> values,
                                        double cap = std::numeric_limits<double>::infinity());
  /// Arbitrary evaluator on t >= 0; `log_eval` may be empty.
  static YoungFunction custom(std::string label, Evaluator eval, bool finite_on_reals,
                              bool strictly_increasing, Evaluator log_eval = {});

  /// Phi(|t|).
  double operator()(double t) const { return eval_(t < 0 ? -t : t); }
  /// log Phi(e^s); -inf where Phi vanishes.
  double log_eval(double s) const;

  bool finite_on_reals() const noexcept { return finite_on_reals_; }
  bool strictly_increasing_on_nonneg() const noexcept { return strictly_increasing_; }
  const std::string& label() const noexcept { return label_; }

  /// Inverse on [0, inf): bracket by doubling from t = 1, then bisection.
  double inverse(double u) const;
  /// log Phi^{-1}(e^{log_u}), solved by bisection in log t.
  double log_inverse(double log_u) const;

 private:
  YoungFunction() = default;

  std::string label_;
  Evaluator eval_;
  Evaluator log_eval_;
  bool finite_on_reals_ = true;
  bool strictly_increasing_ = true;
};

double eval_young(const YoungFunction& phi, double t);
double invert_young(const YoungFunction& phi, double u);

struct ConjugateExponent {
  double p;
  double p_prime;

  static ConjugateExponent of(double p);
};

/// Psi(s) = sup_{t >= 0} (t|s| - Phi(t)), evaluated numerically per call.
class ComplementaryFunction {
 public:
  explicit ComplementaryFunction(YoungFunction phi) : phi_(std::move(phi)) {}

  /// Throws UnboundedSup when the objective keeps increasing past 2^200.
  double operator()(double s) const;
  const YoungFunction& primal() const noexcept { return phi_; }

  /// Extended-valued Young function view (+inf where the supremum diverges).
  YoungFunction as_young() const;

 private:
  YoungFunction phi_;
};

double complementary(const YoungFunction& phi, double s);

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

struct SubmultiplicativeViolation {
  double s;
  double t;
  double phi_st;
  double phi_s_phi_t;
};

struct SubmultiplicativityReport {
  std::string label;
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  /// First violations found (capped at 64).
  std::vector<SubmultiplicativeViolation> violations;

  bool pass() const noexcept { return violation_count == 0; }
};

/// Checks Phi(st) <= Phi(s) Phi(t) for every (s, t) in grid x grid.
SubmultiplicativityReport certify_submultiplicative(const YoungFunction& phi,
                                                    const std::vector<double>& grid);
SubmultiplicativityReport certify_submultiplicative(
    const YoungFunction& phi, const std::vector<std::pair<double, double>>& pairs);

struct ConvexityWitness {
  double s;
  double t;
  double gap;  // Phi((s+t)/2) - (Phi(s)+Phi(t))/2 > 0
};

struct ConvexityCertificate {
  std::string label;
  std::size_t pairs_checked = 0;
  std::vector<ConvexityWitness> violations;

  bool pass() const noexcept { return violations.empty(); }
};

/// Midpoint convexity on all pairs of grid points.
ConvexityCertificate certify_convexity(const YoungFunction& phi, const std::vector<double>& grid);

class ConvexityViolation : public Error {
 public:
  explicit ConvexityViolation(ConvexityWitness witness);
  const ConvexityWitness& witness() const noexcept { return witness_; }

 private:
  ConvexityWitness witness_;
};

struct LambdaTransform {
  YoungFunction lambda;
  ConvexityCertificate certificate;
};

/// Lambda(t) = Phi(|t|^{1/p}); throws ConvexityViolation when the midpoint
/// certificate on `grid` fails.
LambdaTransform lambda_transform(const YoungFunction& phi, double p,
                                 const std::vector<double>& grid);
LambdaTransform lambda_transform(const YoungFunction& phi, double p);

/// Default certification grid: 512 log-spaced points spanning [1e-6, 1e6].
std::vector<double> default_certification_grid();

}  // namespace orlicz
