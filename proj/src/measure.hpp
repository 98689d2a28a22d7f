#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "functions.hpp"
#include "quadrature.hpp"

namespace orlicz {

struct Atom {
  double location;
  double mass;
};

/// A finite measure on [a, b]: a density plus finitely many atoms.
///
/// Closed intervals include atoms at both endpoints, so interval_mass is
/// additive only at atom-free split points. Densities without a closed-form
/// cumulative are integrated once at construction onto a 256-cell table, which
/// keeps queries cheap and the object safe for concurrent reads.
class MeasureSpec {
 public:
  enum class Kind { Lebesgue, Power, ExpDegenerate, PiecewiseConstant, AtomsOnly, Custom };

  static MeasureSpec lebesgue(double a, double b, std::vector<Atom> atoms = {});
  /// density (x - a)^k, k > -1
  static MeasureSpec power(double a, double b, double exponent, std::vector<Atom> atoms = {});
  /// density 2 e^{-1/x^2} / x^3 with cumulative e^{-1/x^2}; requires a >= 0.
  static MeasureSpec expdeg(double a, double b, std::vector<Atom> atoms = {});
  /// values[i] on [breaks[i], breaks[i+1]); breaks span [a, b].
  static MeasureSpec piecewise_constant(std::vector<double> breaks, std::vector<double> values,
                                        std::vector<Atom> atoms = {});
  static MeasureSpec atoms_only(double a, double b, std::vector<Atom> atoms);
  /// User density. `integrable_endpoint_singularity` switches the endpoint
  /// cells to geometric refinement toward a and b; without it a density above
  /// 1e300 at an endpoint is refused.
  static MeasureSpec from_density(double a, double b, std::function<double(double)> density,
                                  std::vector<double> breaks = {}, std::vector<Atom> atoms = {},
                                  bool integrable_endpoint_singularity = false,
                                  std::function<double(double)> closed_form_cumulative = {},
                                  const QuadratureConfig& cfg = {});

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  /// Interior points where the density may jump or kink.
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  bool has_closed_form_cumulative() const noexcept;

  double density(double x) const;
  double log_density(double x) const;

  /// Density part of [x, y] (closed form when available).
  double density_mass(double x, double y) const;
  /// Density part of [x, y] by adaptive quadrature, ignoring any closed form.
  double quadrature_density_mass(double x, double y) const;
  /// Atoms in [x, y], both endpoints included.
  double atom_mass(double x, double y) const;
  double point_mass(double x) const;

  double interval_mass(double x, double y) const;
  /// log interval_mass, exact in log-space for the degenerate weight.
  double log_interval_mass(double x, double y) const;
  double total_mass() const;

 private:
  MeasureSpec() = default;
  void finalize_atoms();
  double table_cumulative(double x) const;

  Kind kind_ = Kind::Lebesgue;
  std::string label_;
  double a_ = 0.0;
  double b_ = 1.0;
  double exponent_ = 0.0;
  std::vector<double> pc_breaks_;
  std::vector<double> pc_values_;
  std::vector<Atom> atoms_;
  std::vector<double> breaks_;
  std::function<double(double)> density_;
  std::function<double(double)> closed_cumulative_;
  bool singular_endpoints_ = false;
  QuadratureConfig quad_;
  std::vector<double> table_x_;
  std::vector<double> table_c_;
};

double interval_mass(const MeasureSpec& m, double x, double y);

/// (1 / nu[a, b]) * integral of f d nu, atoms by point evaluation.
double weighted_average(const PiecewiseLinearFunction& f, const MeasureSpec& nu,
                        const QuadratureConfig& cfg = {});

/// Integral of f against the measure over [a, b] (density by quadrature on the
/// union of f's and the density's breakpoints, plus atom terms).
double integrate_against(const GeneralFunction& f, const MeasureSpec& m, const QuadratureConfig& cfg = {});

}  // namespace orlicz
