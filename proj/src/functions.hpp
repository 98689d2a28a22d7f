#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace orlicz {

/// Continuous piecewise-linear function on [knots.front(), knots.back()].
/// Its derivative is the piecewise-constant slope sequence.
class PiecewiseLinearFunction {
 public:
  PiecewiseLinearFunction(std::vector<double> knots, std::vector<double> values);

  /// Values obtained by accumulating slope * width from `start_value`.
  static PiecewiseLinearFunction from_slopes(std::vector<double> knots, double start_value,
                                             const std::vector<double>& slopes);

  double operator()(double x) const;

  std::size_t segments() const noexcept { return knots_.size() - 1; }
  double slope(std::size_t segment) const noexcept { return slopes_[segment]; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }
  double lipschitz_constant() const noexcept;
  double max_abs() const noexcept;

  PiecewiseLinearFunction plus(double c) const;
  PiecewiseLinearFunction times(double c) const;

  /// Knots plus the interior zero crossings, sorted.
  std::vector<double> breakpoints_with_zero_crossings() const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Finitely many levels on [b_0, b_1), [b_1, b_2), ..., [b_{m-1}, b_m] with
/// an explicit value at every break.
class StepFunction {
 public:
  /// Break values default to the piece to the right (the last break takes the
  /// last level).
  StepFunction(std::vector<double> breaks, std::vector<double> levels);
  StepFunction(std::vector<double> breaks, std::vector<double> levels,
               std::vector<double> break_values);

  /// chi_{[lo, hi]} on [a, b].
  static StepFunction indicator(double a, double b, double lo, double hi);

  double operator()(double x) const;

  const std::vector<double>& breaks() const noexcept { return breaks_; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<double>& break_values() const noexcept { return break_values_; }
  double max_abs() const noexcept;

 private:
  std::vector<double> breaks_;
  std::vector<double> levels_;
  std::vector<double> break_values_;
};

/// Any evaluatable function, with the points where it may fail to be smooth.
struct GeneralFunction {
  std::function<double(double)> eval;
  std::vector<double> breaks;
  /// Upper bound for |f|, used only to seed the gauge-norm bracket (0 = unknown).
  double scale_hint = 0.0;

  static GeneralFunction from(const PiecewiseLinearFunction& f);
  static GeneralFunction from(const StepFunction& f);
};

}  // namespace orlicz
