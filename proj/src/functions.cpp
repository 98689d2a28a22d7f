#include "functions.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace orlicz {

PiecewiseLinearFunction::PiecewiseLinearFunction(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() < 2 || knots_.size() != values_.size())
    fail(ErrorCode::InvalidArgument, "piecewise-linear function needs >= 2 knots with matching values");
  slopes_.resize(knots_.size() - 1);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double dx = knots_[i + 1] - knots_[i];
    if (!(dx > 0.0)) fail(ErrorCode::InvalidArgument, "piecewise-linear knots must strictly increase");
    if (!std::isfinite(values_[i]) || !std::isfinite(values_[i + 1]))
      fail(ErrorCode::InvalidArgument, "piecewise-linear values must be finite");
    slopes_[i] = (values_[i + 1] - values_[i]) / dx;
  }
}

PiecewiseLinearFunction PiecewiseLinearFunction::from_slopes(std::vector<double> knots, double start_value,
                                                             const std::vector<double>& slopes) {
  if (slopes.size() + 1 != knots.size()) fail(ErrorCode::InvalidArgument, "need one slope per segment");
  std::vector<double> values(knots.size());
  values[0] = start_value;
  for (std::size_t i = 0; i < slopes.size(); ++i) values[i + 1] = values[i] + slopes[i] * (knots[i + 1] - knots[i]);
  PiecewiseLinearFunction f(std::move(knots), std::move(values));
  // Keep the defining slopes exactly rather than re-deriving them by differencing.
  f.slopes_ = slopes;
  return f;
}

double PiecewiseLinearFunction::operator()(double x) const {
  if (x <= knots_.front()) return values_.front();
  if (x >= knots_.back()) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return values_[i] + slopes_[i] * (x - knots_[i]);
}

double PiecewiseLinearFunction::lipschitz_constant() const noexcept {
  double out = 0.0;
  for (double s : slopes_) out = std::max(out, std::abs(s));
  return out;
}

double PiecewiseLinearFunction::max_abs() const noexcept {
  double out = 0.0;
  for (double v : values_) out = std::max(out, std::abs(v));
  return out;
}

PiecewiseLinearFunction PiecewiseLinearFunction::plus(double c) const {
  PiecewiseLinearFunction out = *this;
  for (double& v : out.values_) v += c;
  return out;
}

PiecewiseLinearFunction PiecewiseLinearFunction::times(double c) const {
  PiecewiseLinearFunction out = *this;
  for (double& v : out.values_) v *= c;
  for (double& s : out.slopes_) s *= c;
  return out;
}

std::vector<double> PiecewiseLinearFunction::breakpoints_with_zero_crossings() const {
  std::vector<double> out = knots_;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double v0 = values_[i];
    const double v1 = values_[i + 1];
    if ((v0 < 0.0 && v1 > 0.0) || (v0 > 0.0 && v1 < 0.0)) {
      const double x = knots_[i] + (knots_[i + 1] - knots_[i]) * (v0 / (v0 - v1));
      if (x > knots_[i] && x < knots_[i + 1]) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> levels)
    : breaks_(std::move(breaks)), levels_(std::move(levels)) {
  if (breaks_.size() < 2 || levels_.size() + 1 != breaks_.size())
    fail(ErrorCode::InvalidArgument, "step function needs m+1 breaks for m levels");
  break_values_.resize(breaks_.size());
  for (std::size_t i = 0; i < levels_.size(); ++i) break_values_[i] = levels_[i];
  break_values_.back() = levels_.back();
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i + 1] > breaks_[i])) fail(ErrorCode::InvalidArgument, "step breaks must strictly increase");
  }
}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> levels,
                           std::vector<double> break_values)
    : StepFunction(std::move(breaks), std::move(levels)) {
  if (break_values.size() != breaks_.size())
    fail(ErrorCode::InvalidArgument, "step function needs one value per break");
  break_values_ = std::move(break_values);
}

StepFunction StepFunction::indicator(double a, double b, double lo, double hi) {
  if (!(a <= lo && lo < hi && hi <= b)) fail(ErrorCode::InvalidArgument, "indicator needs a <= lo < hi <= b");
  std::vector<double> breaks{a};
  std::vector<double> levels;
  std::vector<double> values;
  if (lo > a) {
    levels.push_back(0.0);
    values.push_back(0.0);
    breaks.push_back(lo);
  }
  levels.push_back(1.0);
  values.push_back(1.0);
  if (hi < b) {
    breaks.push_back(hi);
    levels.push_back(0.0);
    values.push_back(1.0);  // closed at hi
  }
  breaks.push_back(b);
  values.push_back(levels.back());
  return StepFunction(std::move(breaks), std::move(levels), std::move(values));
}

double StepFunction::operator()(double x) const {
  const auto hit = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  if (hit != breaks_.end() && *hit == x) return break_values_[static_cast<std::size_t>(hit - breaks_.begin())];
  if (x < breaks_.front() || x > breaks_.back()) return 0.0;
  const std::size_t i = static_cast<std::size_t>(hit - breaks_.begin()) - 1;
  return levels_[i];
}

double StepFunction::max_abs() const noexcept {
  double out = 0.0;
  for (double v : levels_) out = std::max(out, std::abs(v));
  for (double v : break_values_) out = std::max(out, std::abs(v));
  return out;
}

GeneralFunction GeneralFunction::from(const PiecewiseLinearFunction& f) {
  return GeneralFunction{[f](double x) { return f(x); }, f.breakpoints_with_zero_crossings(), f.max_abs()};
}

GeneralFunction GeneralFunction::from(const StepFunction& f) {
  return GeneralFunction{[f](double x) { return f(x); }, f.breaks(), f.max_abs()};
}

}  // namespace orlicz
