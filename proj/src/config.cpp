#include "config.hpp"

#include <cmath>
#include <set>

#include "errors.hpp"

namespace orlicz::config {

void config_error(const std::string& path, const std::string& message) {
  fail(ErrorCode::Config, (path.empty() ? std::string("config") : path) + ": " + message);
}

json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text.empty() ? std::string("{}") : text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
  }
}

Reader::Reader(const json& node, std::string path) : node_(node), path_(std::move(path)), resolved_(json::object()) {
  if (!node_.is_object()) config_error(path_, "expected an object");
}

bool Reader::has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }

const json& Reader::raw(const std::string& key) const {
  if (!has(key)) config_error(child_path(key), "missing required field");
  return node_.at(key);
}

std::string Reader::child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

double Reader::number(const std::string& key) const {
  const json& v = raw(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  config_error(child_path(key), "expected a number");
}

double Reader::number(const std::string& key, double fallback) {
  const double v = has(key) ? static_cast<const Reader&>(*this).number(key) : fallback;
  resolved_[key] = number_json(v);
  return v;
}

std::uint64_t Reader::integer(const std::string& key, std::uint64_t fallback) {
  std::uint64_t v = fallback;
  if (has(key)) {
    const json& j = node_.at(key);
    if (!j.is_number_integer() || (j.is_number_integer() && j.get<std::int64_t>() < 0))
      config_error(child_path(key), "expected a non-negative integer");
    v = j.get<std::uint64_t>();
  }
  resolved_[key] = v;
  return v;
}

bool Reader::boolean(const std::string& key, bool fallback) {
  bool v = fallback;
  if (has(key)) {
    if (!node_.at(key).is_boolean()) config_error(child_path(key), "expected true or false");
    v = node_.at(key).get<bool>();
  }
  resolved_[key] = v;
  return v;
}

std::string Reader::string(const std::string& key) const {
  const json& v = raw(key);
  if (!v.is_string()) config_error(child_path(key), "expected a string");
  return v.get<std::string>();
}

std::string Reader::string(const std::string& key, const std::string& fallback) {
  const std::string v = has(key) ? static_cast<const Reader&>(*this).string(key) : fallback;
  resolved_[key] = v;
  return v;
}

std::vector<double> Reader::numbers(const std::string& key) const {
  const json& v = raw(key);
  if (!v.is_array()) config_error(child_path(key), "expected an array of numbers");
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) config_error(child_path(key), "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> Reader::numbers(const std::string& key, const std::vector<double>& fallback) {
  const std::vector<double> v = has(key) ? static_cast<const Reader&>(*this).numbers(key) : fallback;
  resolved_[key] = v;
  return v;
}

void Reader::only(std::initializer_list<const char*> allowed) const {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = node_.begin(); it != node_.end(); ++it) {
    if (!ok.count(it.key())) config_error(child_path(it.key()), "unknown field");
  }
}

namespace {

// Rethrows core argument errors as config errors at `path`.
template <typename F>
auto guarded(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Config) config_error(path, e.what());
    throw;
  }
}

std::vector<Atom> parse_atoms(Reader& r) {
  std::vector<Atom> atoms;
  json out = json::array();
  if (r.has("atoms")) {
    const json& arr = r.raw("atoms");
    if (!arr.is_array()) config_error(r.child_path("atoms"), "expected an array of {at, mass}");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Reader ar(arr[i], r.child_path("atoms") + "[" + std::to_string(i) + "]");
      ar.only({"at", "mass"});
      atoms.push_back({ar.number("at"), ar.number("mass")});
      out.push_back({{"at", atoms.back().location}, {"mass", atoms.back().mass}});
    }
  }
  r.set("atoms", out);
  return atoms;
}

}  // namespace

YoungFunction parse_young(const json& node, const std::string& path, json& resolved) {
  Reader r(node, path);
  const std::string type = r.string("type");
  r.set("type", type);
  YoungFunction phi = [&]() {
    if (type == "power") {
      r.only({"type", "q", "scale"});
      const double q = r.number("q", 2.0);
      const double scale = r.number("scale", 1.0);
      return guarded(path, [&] { return YoungFunction::power(q, scale); });
    }
    if (type == "logbump") {
      r.only({"type", "p", "alpha"});
      const double p = r.number("p", 2.0);
      const double alpha = r.number("alpha", 1.0);
      return guarded(path, [&] { return YoungFunction::logbump(p, alpha); });
    }
    if (type == "exp") {
      r.only({"type"});
      return YoungFunction::exponential();
    }
    if (type == "piecewise_linear") {
      r.only({"type", "knots", "values", "cap"});
      std::vector<double> knots = r.numbers("knots");
      std::vector<double> values = r.numbers("values");
      r.set("knots", knots);
      r.set("values", values);
      const double cap = r.number("cap", std::numeric_limits<double>::infinity());
      return guarded(path, [&] { return YoungFunction::piecewise_linear(knots, values, cap); });
    }
    config_error(r.child_path("type"), "unknown Young function '" + type + "' (power, logbump, exp, piecewise_linear)");
  }();
  resolved = r.resolved();
  return phi;
}

MeasureSpec parse_measure(const json& node, const std::string& path, json& resolved) {
  Reader r(node, path);
  const std::string type = r.string("type");
  r.set("type", type);
  MeasureSpec m = [&]() {
    if (type == "piecewise_constant") {
      r.only({"type", "breaks", "values", "atoms"});
      std::vector<double> breaks = r.numbers("breaks");
      std::vector<double> values = r.numbers("values");
      r.set("breaks", breaks);
      r.set("values", values);
      std::vector<Atom> atoms = parse_atoms(r);
      return guarded(path, [&] { return MeasureSpec::piecewise_constant(breaks, values, atoms); });
    }
    if (type == "power")
      r.only({"type", "a", "b", "exponent", "atoms"});
    else
      r.only({"type", "a", "b", "atoms"});
    const double a = r.number("a", 0.0);
    const double b = r.number("b", 1.0);
    if (type == "lebesgue") {
      std::vector<Atom> atoms = parse_atoms(r);
      return guarded(path, [&] { return MeasureSpec::lebesgue(a, b, atoms); });
    }
    if (type == "power") {
      const double k = r.number("exponent", 1.0);
      std::vector<Atom> atoms = parse_atoms(r);
      return guarded(path, [&] { return MeasureSpec::power(a, b, k, atoms); });
    }
    if (type == "expdeg") {
      std::vector<Atom> atoms = parse_atoms(r);
      return guarded(path, [&] { return MeasureSpec::expdeg(a, b, atoms); });
    }
    if (type == "atoms_only") {
      std::vector<Atom> atoms = parse_atoms(r);
      return guarded(path, [&] { return MeasureSpec::atoms_only(a, b, atoms); });
    }
    config_error(r.child_path("type"),
                 "unknown measure '" + type + "' (lebesgue, power, expdeg, piecewise_constant, atoms_only)");
  }();
  resolved = r.resolved();
  return m;
}

AnyFunction parse_function(const json& node, const std::string& path, json& resolved) {
  Reader r(node, path);
  const std::string type = r.string("type");
  r.set("type", type);
  AnyFunction out;
  if (type == "piecewise_linear") {
    r.only({"type", "knots", "values"});
    std::vector<double> knots = r.numbers("knots");
    std::vector<double> values = r.numbers("values");
    r.set("knots", knots);
    r.set("values", values);
    out.pl = guarded(path, [&] { return PiecewiseLinearFunction(knots, values); });
  } else if (type == "step") {
    r.only({"type", "breaks", "levels", "break_values"});
    std::vector<double> breaks = r.numbers("breaks");
    std::vector<double> levels = r.numbers("levels");
    r.set("breaks", breaks);
    r.set("levels", levels);
    if (r.has("break_values")) {
      std::vector<double> bv = r.numbers("break_values");
      r.set("break_values", bv);
      out.step = guarded(path, [&] { return StepFunction(breaks, levels, bv); });
    } else {
      out.step = guarded(path, [&] { return StepFunction(breaks, levels); });
    }
  } else if (type == "indicator") {
    r.only({"type", "a", "b", "lo", "hi"});
    const double a = r.number("a", 0.0);
    const double b = r.number("b", 1.0);
    const double lo = r.number("lo");
    const double hi = r.number("hi");
    r.set("lo", lo);
    r.set("hi", hi);
    out.step = guarded(path, [&] { return StepFunction::indicator(a, b, lo, hi); });
  } else {
    config_error(r.child_path("type"), "unknown function '" + type + "' (piecewise_linear, step, indicator)");
  }
  resolved = r.resolved();
  return out;
}

PiecewiseLinearFunction parse_pl_function(const json& node, const std::string& path, json& resolved) {
  AnyFunction f = parse_function(node, path, resolved);
  if (!f.pl) config_error(path, "a piecewise_linear function is required here");
  return *f.pl;
}

ScanGrid parse_grid(const json* node, const std::string& path, json& resolved) {
  const json empty = json::object();
  Reader r(node ? *node : empty, path);
  r.only({"policy", "uniform_points", "geometric_points", "geometric_min_fraction", "refine", "refine_points"});
  ScanGrid g;
  g.policy = grid_policy_from_string(r.string("policy", to_string(g.policy)));
  g.uniform_points = r.integer("uniform_points", g.uniform_points);
  g.geometric_points = r.integer("geometric_points", g.geometric_points);
  g.geometric_min_fraction = r.number("geometric_min_fraction", g.geometric_min_fraction);
  g.refine = r.boolean("refine", g.refine);
  g.refine_points = r.integer("refine_points", g.refine_points);
  if (!(g.geometric_min_fraction > 0.0 && g.geometric_min_fraction < 0.5))
    config_error(r.child_path("geometric_min_fraction"), "must lie in (0, 1/2)");
  if (g.uniform_points + g.geometric_points == 0) config_error(path, "grid has no points");
  resolved = r.resolved();
  return g;
}

QuadratureConfig parse_quadrature(const json* node, const std::string& path, json& resolved) {
  const json empty = json::object();
  Reader r(node ? *node : empty, path);
  r.only({"abs_tol", "rel_tol", "max_subdivisions"});
  QuadratureConfig q;
  q.abs_tol = r.number("abs_tol", q.abs_tol);
  q.rel_tol = r.number("rel_tol", q.rel_tol);
  q.max_subdivisions = static_cast<unsigned>(r.integer("max_subdivisions", q.max_subdivisions));
  if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0)) config_error(path, "tolerances must be positive");
  resolved = r.resolved();
  return q;
}

}  // namespace orlicz::config
