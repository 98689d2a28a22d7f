#include "measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace orlicz {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDensityCeiling = 1e300;
constexpr std::size_t kTableCells = 256;

void check_interval(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    fail(ErrorCode::InvalidArgument, "measure needs finite endpoints a < b");
}

std::vector<double> merge_points(std::vector<double> pts, double lo, double hi) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double x : pts) {
    if (x < lo || x > hi) continue;
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  return out;
}

bool regular_density_value(double d) { return std::isfinite(d) && d <= kDensityCeiling; }

}  // namespace

void MeasureSpec::finalize_atoms() {
  for (const Atom& atom : atoms_) {
    if (!(atom.location >= a_ && atom.location <= b_))
      fail(ErrorCode::InvalidArgument, "atom location outside [a, b]");
    if (!(atom.mass > 0.0) || !std::isfinite(atom.mass)) fail(ErrorCode::InvalidArgument, "atom mass must be positive");
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

MeasureSpec MeasureSpec::lebesgue(double a, double b, std::vector<Atom> atoms) {
  check_interval(a, b);
  MeasureSpec m;
  m.kind_ = Kind::Lebesgue;
  m.label_ = "lebesgue";
  m.a_ = a;
  m.b_ = b;
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  return m;
}

MeasureSpec MeasureSpec::power(double a, double b, double exponent, std::vector<Atom> atoms) {
  check_interval(a, b);
  if (!(exponent > -1.0) || !std::isfinite(exponent))
    fail(ErrorCode::InvalidArgument, "power density needs exponent > -1 for a finite measure");
  MeasureSpec m;
  m.kind_ = Kind::Power;
  std::ostringstream label;
  label << "power(k=" << exponent << ")";
  m.label_ = label.str();
  m.a_ = a;
  m.b_ = b;
  m.exponent_ = exponent;
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  return m;
}

MeasureSpec MeasureSpec::expdeg(double a, double b, std::vector<Atom> atoms) {
  check_interval(a, b);
  if (a < 0.0) fail(ErrorCode::InvalidArgument, "expdeg weight lives on [a, b] with a >= 0");
  MeasureSpec m;
  m.kind_ = Kind::ExpDegenerate;
  m.label_ = "expdeg";
  m.a_ = a;
  m.b_ = b;
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  return m;
}

MeasureSpec MeasureSpec::piecewise_constant(std::vector<double> breaks, std::vector<double> values,
                                            std::vector<Atom> atoms) {
  if (breaks.size() < 2 || values.size() + 1 != breaks.size())
    fail(ErrorCode::InvalidArgument, "piecewise density needs m+1 breaks for m values");
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) fail(ErrorCode::InvalidArgument, "piecewise density breaks must increase");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::InvalidArgument, "density values must be finite and >= 0");
  }
  check_interval(breaks.front(), breaks.back());
  MeasureSpec m;
  m.kind_ = Kind::PiecewiseConstant;
  m.label_ = "piecewise";
  m.a_ = breaks.front();
  m.b_ = breaks.back();
  m.breaks_.assign(breaks.begin() + 1, breaks.end() - 1);
  m.pc_breaks_ = std::move(breaks);
  m.pc_values_ = std::move(values);
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  return m;
}

MeasureSpec MeasureSpec::atoms_only(double a, double b, std::vector<Atom> atoms) {
  check_interval(a, b);
  MeasureSpec m;
  m.kind_ = Kind::AtomsOnly;
  m.label_ = "atoms";
  m.a_ = a;
  m.b_ = b;
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  return m;
}

MeasureSpec MeasureSpec::from_density(double a, double b, std::function<double(double)> density,
                                      std::vector<double> breaks, std::vector<Atom> atoms,
                                      bool integrable_endpoint_singularity,
                                      std::function<double(double)> closed_form_cumulative,
                                      const QuadratureConfig& cfg) {
  check_interval(a, b);
  if (!density) fail(ErrorCode::InvalidArgument, "custom measure needs a density");
  MeasureSpec m;
  m.kind_ = Kind::Custom;
  m.label_ = "custom";
  m.a_ = a;
  m.b_ = b;
  m.density_ = std::move(density);
  m.closed_cumulative_ = std::move(closed_form_cumulative);
  m.singular_endpoints_ = integrable_endpoint_singularity;
  m.quad_ = cfg;
  m.atoms_ = std::move(atoms);
  m.finalize_atoms();
  std::vector<double> interior;
  for (double x : breaks) {
    if (x > a && x < b) interior.push_back(x);
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  m.breaks_ = interior;

  if (!m.singular_endpoints_ && !m.closed_cumulative_) {
    if (!regular_density_value(m.density_(a)) || !regular_density_value(m.density_(b)))
      fail(ErrorCode::QuadratureNonConvergence,
           "density exceeds 1e300 at an endpoint; declare an integrable singularity or a closed-form cumulative");
  }
  if (!m.closed_cumulative_) {
    std::vector<double> grid = interior;
    for (std::size_t i = 0; i <= kTableCells; ++i)
      grid.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(kTableCells));
    m.table_x_ = merge_points(std::move(grid), a, b);
    m.table_c_.assign(m.table_x_.size(), 0.0);
    for (std::size_t i = 1; i < m.table_x_.size(); ++i)
      m.table_c_[i] = m.table_c_[i - 1] + m.quadrature_density_mass(m.table_x_[i - 1], m.table_x_[i]);
  }
  return m;
}

bool MeasureSpec::has_closed_form_cumulative() const noexcept {
  return kind_ != Kind::Custom || static_cast<bool>(closed_cumulative_);
}

double MeasureSpec::density(double x) const {
  if (x < a_ || x > b_) return 0.0;
  switch (kind_) {
    case Kind::Lebesgue: return 1.0;
    case Kind::Power: return std::pow(x - a_, exponent_);
    case Kind::ExpDegenerate: return std::exp(log_density(x));
    case Kind::PiecewiseConstant: {
      auto it = std::upper_bound(pc_breaks_.begin(), pc_breaks_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - pc_breaks_.begin());
      if (i == 0) i = 1;
      if (i > pc_values_.size()) i = pc_values_.size();
      return pc_values_[i - 1];
    }
    case Kind::AtomsOnly: return 0.0;
    case Kind::Custom: return density_(x);
  }
  return 0.0;
}

double MeasureSpec::log_density(double x) const {
  if (x < a_ || x > b_) return -kInf;
  switch (kind_) {
    case Kind::Lebesgue: return 0.0;
    case Kind::Power: {
      const double d = x - a_;
      if (d == 0.0) return exponent_ > 0 ? -kInf : (exponent_ < 0 ? kInf : 0.0);
      return exponent_ * std::log(d);
    }
    case Kind::ExpDegenerate:
      if (x <= 0.0) return -kInf;
      return std::log(2.0) - 1.0 / (x * x) - 3.0 * std::log(x);
    default: return std::log(density(x));
  }
}

double MeasureSpec::quadrature_density_mass(double x, double y) const {
  if (kind_ == Kind::AtomsOnly || !(y > x)) return 0.0;
  const std::vector<double> cuts = merge_points(breaks_, x, y);
  const auto dens = [this](double t) { return density(t); };
  const auto log_dens = [this](double t) { return log_density(t); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const bool sing_lo = !regular_density_value(density(lo));
    const bool sing_hi = !regular_density_value(density(hi));
    if (!sing_lo && !sing_hi) {
      total += integrate(dens, lo, hi, quad_).value;
      continue;
    }
    const double mid = 0.5 * (lo + hi);
    total += sing_lo ? std::exp(log_integrate_exp_toward(log_dens, lo, mid, quad_))
                     : integrate(dens, lo, mid, quad_).value;
    total += sing_hi ? std::exp(log_integrate_exp_toward(log_dens, hi, mid, quad_))
                     : integrate(dens, mid, hi, quad_).value;
  }
  return total;
}

double MeasureSpec::table_cumulative(double x) const {
  if (x <= a_) return 0.0;
  if (x >= b_) return table_c_.back();
  const auto it = std::upper_bound(table_x_.begin(), table_x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - table_x_.begin()) - 1;
  if (table_x_[i] == x) return table_c_[i];
  if (i + 2 == table_x_.size() && singular_endpoints_) {
    return table_c_.back() - quadrature_density_mass(x, b_);
  }
  return table_c_[i] + quadrature_density_mass(table_x_[i], x);
}

double MeasureSpec::density_mass(double x, double y) const {
  x = std::max(x, a_);
  y = std::min(y, b_);
  if (!(y > x)) return 0.0;
  switch (kind_) {
    case Kind::Lebesgue: return y - x;
    case Kind::Power: {
      const double k1 = exponent_ + 1.0;
      return (std::pow(y - a_, k1) - std::pow(x - a_, k1)) / k1;
    }
    case Kind::ExpDegenerate: {
      // e^{-1/y^2} - e^{-1/x^2} without cancellation
      const double inv_y2 = 1.0 / (y * y);
      const double inv_x2 = x > 0.0 ? 1.0 / (x * x) : kInf;
      return -std::expm1(inv_y2 - inv_x2) * std::exp(-inv_y2);
    }
    case Kind::PiecewiseConstant: {
      double total = 0.0;
      for (std::size_t i = 0; i < pc_values_.size(); ++i) {
        const double lo = std::max(x, pc_breaks_[i]);
        const double hi = std::min(y, pc_breaks_[i + 1]);
        if (hi > lo) total += pc_values_[i] * (hi - lo);
      }
      return total;
    }
    case Kind::AtomsOnly: return 0.0;
    case Kind::Custom:
      if (closed_cumulative_) return closed_cumulative_(y) - closed_cumulative_(x);
      return table_cumulative(y) - table_cumulative(x);
  }
  return 0.0;
}

double MeasureSpec::atom_mass(double x, double y) const {
  double total = 0.0;
  for (const Atom& atom : atoms_) {
    if (atom.location >= x && atom.location <= y) total += atom.mass;
  }
  return total;
}

double MeasureSpec::point_mass(double x) const { return atom_mass(x, x); }

double MeasureSpec::interval_mass(double x, double y) const {
  if (x > y) fail(ErrorCode::InvalidArgument, "interval_mass needs x <= y");
  return density_mass(x, y) + atom_mass(x, y);
}

double MeasureSpec::log_interval_mass(double x, double y) const {
  if (x > y) fail(ErrorCode::InvalidArgument, "interval_mass needs x <= y");
  const double atoms = atom_mass(x, y);
  const double log_atoms = atoms > 0.0 ? std::log(atoms) : -kInf;
  if (kind_ == Kind::ExpDegenerate) {
    const double lo = std::max(x, a_);
    const double hi = std::min(y, b_);
    double log_dens = -kInf;
    if (hi > lo && hi > 0.0) {
      const double inv_y2 = 1.0 / (hi * hi);
      const double inv_x2 = lo > 0.0 ? 1.0 / (lo * lo) : kInf;
      log_dens = -inv_y2 + std::log(-std::expm1(inv_y2 - inv_x2));
    }
    return log_add_exp(log_dens, log_atoms);
  }
  const double dens = density_mass(x, y);
  return log_add_exp(dens > 0.0 ? std::log(dens) : -kInf, log_atoms);
}

double MeasureSpec::total_mass() const { return interval_mass(a_, b_); }

double interval_mass(const MeasureSpec& m, double x, double y) {
  if (x < m.a() || y > m.b() || x > y) fail(ErrorCode::InvalidArgument, "interval_mass needs a <= x <= y <= b");
  return m.interval_mass(x, y);
}

double integrate_against(const GeneralFunction& f, const MeasureSpec& m, const QuadratureConfig& cfg) {
  double total = 0.0;
  for (const Atom& atom : m.atoms()) total += atom.mass * f.eval(atom.location);
  if (m.kind() == MeasureSpec::Kind::AtomsOnly) return total;
  std::vector<double> pts = f.breaks;
  pts.insert(pts.end(), m.breakpoints().begin(), m.breakpoints().end());
  const std::vector<double> cuts = merge_points(std::move(pts), m.a(), m.b());
  const auto integrand = [&](double x) {
    const double d = m.density(x);
    return d == 0.0 ? 0.0 : f.eval(x) * d;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(integrand, cuts[i], cuts[i + 1], cfg).value;
  return total;
}

double weighted_average(const PiecewiseLinearFunction& f, const MeasureSpec& nu, const QuadratureConfig& cfg) {
  const double total = nu.total_mass();
  if (!(total > 0.0)) fail(ErrorCode::ZeroTotalMass, "weighted average needs nu[a, b] > 0");
  return integrate_against(GeneralFunction::from(f), nu, cfg) / total;
}

}  // namespace orlicz
