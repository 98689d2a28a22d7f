#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "config.hpp"
#include "errors.hpp"
#include "gauge.hpp"
#include "showcase.hpp"
#include "verify.hpp"

namespace orlicz {

using nlohmann::json;
using config::number_json;
using config::Reader;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> log = [] {
    auto l = spdlog::stderr_color_mt("orliczkit");
    l->set_level(spdlog::level::warn);
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trace_csv(const std::vector<TracePoint>& trace, bool log_column) {
  std::string out = log_column ? "x,log_supremand\n" : "x,supremand\n";
  for (const TracePoint& t : trace) {
    out += fmt_double(t.x);
    out += ',';
    out += fmt_double(log_column ? t.log_supremand : t.supremand);
    out += '\n';
  }
  return out;
}

json grid_json(const ScanGrid& g) {
  return {{"policy", to_string(g.policy)},
          {"uniform_points", g.uniform_points},
          {"geometric_points", g.geometric_points},
          {"geometric_min_fraction", g.geometric_min_fraction},
          {"refine", g.refine},
          {"refine_points", g.refine_points}};
}

json constant_json(const ConstantReport& r, const std::string& prefix, std::vector<Artifact>& artifacts) {
  json terms = json::array();
  for (const SupTerm& t : r.terms) {
    const std::string file = prefix + "_" + t.name + ".csv";
    const std::string log_file = prefix + "_" + t.name + ".log.csv";
    artifacts.push_back({file, trace_csv(t.trace, false)});
    artifacts.push_back({log_file, trace_csv(t.trace, true)});
    terms.push_back({{"name", t.name},
                     {"sup", number_json(t.sup)},
                     {"log_sup", number_json(t.log_sup)},
                     {"argmax", number_json(t.argmax)},
                     {"classification", to_string(t.classification)},
                     {"log_sup_doubled", number_json(t.log_sup_doubled)},
                     {"diverging_endpoint", t.diverging_endpoint},
                     {"trace_points", t.trace.size()},
                     {"trace_csv", file},
                     {"log_trace_csv", log_file}});
  }
  return {{"name", r.name},
          {"value", number_json(r.value)},
          {"log_value", number_json(r.log_value)},
          {"normalizer", number_json(r.normalizer)},
          {"classification", to_string(r.classification)},
          {"grid", grid_json(r.grid)},
          {"diagnostics", r.diagnostics},
          {"terms", terms}};
}

struct Common {
  unsigned workers = 1;
  std::uint64_t seed = 1;
  ScanGrid grid;
  QuadratureConfig quad;
};

/// Reads workers, seed, grid and quadrature, applying the flag overrides.
Common read_common(Reader& r, const RunOptions& opt) {
  Common c;
  if (opt.workers > 0) r.set("workers", opt.workers);
  c.workers = opt.workers > 0 ? opt.workers : static_cast<unsigned>(r.integer("workers", 1));
  if (c.workers == 0) c.workers = 1;
  r.set("workers", c.workers);
  c.seed = opt.seed ? *opt.seed : r.integer("seed", 1);
  r.set("seed", c.seed);

  json grid_node = r.has("grid") ? r.raw("grid") : json::object();
  if (opt.grid_policy) grid_node["policy"] = *opt.grid_policy;
  json resolved;
  c.grid = config::parse_grid(&grid_node, r.child_path("grid"), resolved);
  r.set("grid", resolved);
  c.quad = config::parse_quadrature(r.has("quadrature") ? &r.raw("quadrature") : nullptr, r.child_path("quadrature"),
                                    resolved);
  r.set("quadrature", resolved);
  return c;
}

YoungFunction read_phi(Reader& r, const char* key = "phi") {
  json resolved;
  YoungFunction phi = config::parse_young(r.raw(key), r.child_path(key), resolved);
  r.set(key, resolved);
  return phi;
}

MeasureSpec read_measure(Reader& r, const char* key) {
  json resolved;
  MeasureSpec m = config::parse_measure(r.raw(key), r.child_path(key), resolved);
  r.set(key, resolved);
  return m;
}

/// mu, nu, w from their own fields, falling back to a shared "measure".
struct Triple {
  MeasureSpec mu;
  MeasureSpec nu;
  MeasureSpec w;
};

Triple read_triple(Reader& r) {
  const bool shared = r.has("measure");
  const auto pick = [&](const char* key) {
    if (r.has(key)) return read_measure(r, key);
    if (!shared) config::config_error(r.child_path(key), "missing (give mu, nu and w, or a shared 'measure')");
    return read_measure(r, "measure");
  };
  return {pick("mu"), pick("nu"), pick("w")};
}

double read_p(Reader& r, double fallback, bool allow_one) {
  const double p = r.number("p", fallback);
  if (!(allow_one ? p >= 1.0 : p > 1.0) || !std::isfinite(p))
    config::config_error(r.child_path("p"), allow_one ? "must satisfy 1 <= p < inf" : "must satisfy 1 < p < inf");
  return p;
}

RunResult cmd_norm(Reader& r, const RunOptions& opt) {
  r.only({"phi", "measure", "function", "quadrature", "grid", "workers", "seed"});
  const Common c = read_common(r, opt);
  const YoungFunction phi = read_phi(r);
  const MeasureSpec mu = read_measure(r, "measure");
  json fres;
  const config::AnyFunction f = config::parse_function(r.raw("function"), r.child_path("function"), fres);
  r.set("function", fres);
  const GaugeResult g = f.step ? gauge_norm_detailed(*f.step, phi, mu)
                               : gauge_norm_detailed(GeneralFunction::from(*f.pl), phi, mu, c.quad);
  logger()->info("norm = {}", g.norm);
  RunResult out;
  out.report["result"] = {{"norm", number_json(g.norm)},
                          {"modular_at_norm", number_json(g.modular_at_norm)},
                          {"expansion_limit_hit", g.expansion_limit_hit}};
  return out;
}

RunResult cmd_constant(Reader& r, const RunOptions& opt) {
  r.only({"constant", "phi", "measure", "mu", "nu", "w", "p", "q", "tau", "check_hypotheses", "classify", "grid",
          "quadrature", "workers", "seed"});
  const Common c = read_common(r, opt);
  const std::string which = r.string("constant");
  r.set("constant", which);
  const Triple t = read_triple(r);
  ScanOptions so;
  so.grid = c.grid;
  so.quad = c.quad;
  so.workers = c.workers;
  so.check_hypotheses = r.boolean("check_hypotheses", true);
  so.classify = r.boolean("classify", true);

  ConstantReport rep;
  if (which == "k1") {
    rep = k1_phi(t.mu, t.nu, t.w, read_phi(r), so);
  } else if (which == "forward" || which == "backward") {
    const double p = read_p(r, 2.0, false);
    const YoungFunction phi = read_phi(r);
    rep = which == "forward" ? k_p_phi_forward(t.mu, t.nu, t.w, p, phi, so)
                             : k_p_phi_backward(t.mu, t.nu, t.w, p, phi, so);
  } else if (which == "classical") {
    const double p = read_p(r, 2.0, false);
    const double q = r.number("q", p);
    rep = k_pq_classical(t.mu, t.nu, t.w, p, q, so);
  } else if (which == "hardy_s" || which == "hardy_t") {
    const double p = read_p(r, 2.0, false);
    const YoungFunction phi = read_phi(r);
    const std::string tau_name = r.string("tau", "one");
    LogWeight tau = tau_name == "one"         ? LogWeight::one()
                    : tau_name == "left_mass" ? LogWeight::left_mass(t.nu)
                    : tau_name == "right_mass"
                        ? LogWeight::right_mass(t.nu)
                        : (config::config_error(r.child_path("tau"), "expected one, left_mass or right_mass"),
                           LogWeight::one());
    rep = which == "hardy_s" ? hardy_s_constant(p, phi, t.mu, tau, t.w, so)
                             : hardy_t_constant(p, phi, t.mu, tau, t.w, so);
  } else {
    config::config_error(r.child_path("constant"),
                         "unknown constant '" + which + "' (k1, forward, backward, classical, hardy_s, hardy_t)");
  }
  logger()->info("{} = {} ({})", rep.name, rep.value, to_string(rep.classification));
  RunResult out;
  out.report["result"] = constant_json(rep, rep.name, out.artifacts);
  if (rep.classification == Classification::Diverging) out.finding = Finding::Divergence;
  return out;
}

RunResult cmd_verify(Reader& r, const RunOptions& opt) {
  r.only({"phi", "measure", "mu", "nu", "w", "p", "family", "extremal", "grid", "quadrature", "workers", "seed"});
  const Common c = read_common(r, opt);
  const Triple t = read_triple(r);
  const double p = read_p(r, 1.0, true);
  PoincareInstance inst{t.mu, t.nu, t.w, p, read_phi(r)};
  inst.validate();
  const double a = inst.mu.a();
  const double b = inst.mu.b();

  const json empty = json::object();
  Reader fam(r.has("family") ? r.raw("family") : empty, r.child_path("family"));
  fam.only({"count", "knot_budget", "spikes"});
  FamilyOptions fo;
  const std::size_t count = fam.integer("count", 100);
  const std::size_t budget = fam.integer("knot_budget", 16);
  fo.spikes = fam.boolean("spikes", true);
  r.set("family", fam.resolved());

  Reader ext(r.has("extremal") ? r.raw("extremal") : empty, r.child_path("extremal"));
  ext.only({"fractions", "eps", "n"});
  const std::vector<double> fractions = ext.numbers("fractions", {0.25, 0.5, 0.75});
  const double eps_frac = ext.number("eps", 1e-3);
  const double n = ext.number("n", kDefaultRegularization);
  r.set("extremal", ext.resolved());

  std::vector<NamedFunction> family;
  std::vector<std::string> notes;
  if (count > 0) {
    const auto fs = random_family(c.seed, count, std::max<std::size_t>(budget, 1), a, b, fo);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      char id[32];
      std::snprintf(id, sizeof id, "random-%04zu", i);
      family.push_back({id, fs[i]});
    }
  }
  for (double frac : fractions) {
    if (!(frac > 0.0 && frac < 1.0)) config::config_error(ext.child_path("fractions"), "fractions must lie in (0, 1)");
    const double alpha = a + frac * (b - a);
    const std::string tag = "alpha=" + fmt_double(alpha);
    try {
      if (p == 1.0) {
        const double eps = eps_frac * std::min(alpha - a, b - alpha);
        family.push_back({"extremal-p1-" + tag, extremal_p1(inst, alpha, eps, n, c.quad)});
      } else {
        ExtremalPair pair = extremal_p(inst, alpha, n, c.quad);
        family.push_back({"extremal-f1-" + tag, std::move(pair.f1)});
        family.push_back({"extremal-f2-" + tag, std::move(pair.f2)});
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BadAlpha && e.code() != ErrorCode::NonIntegrableIntegrand) throw;
      notes.push_back("extremal at " + tag + " skipped: " + e.what());
      logger()->warn("{}", notes.back());
    }
  }

  CertifyOptions co;
  co.scan.grid = c.grid;
  co.scan.quad = c.quad;
  co.scan.workers = c.workers;
  co.workers = c.workers;
  co.quad = c.quad;
  const CertificationReport rep = certify_instance(inst, family, co);

  RunResult out;
  json records = json::array();
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const RatioRecord& rec = rep.records[i];
    records.push_back({{"id", rec.id},
                       {"lhs", number_json(rec.lhs)},
                       {"rhs", number_json(rec.rhs)},
                       {"ratio", number_json(rec.ratio)},
                       {"within_bound", static_cast<bool>(rep.within_bound[i])}});
  }
  json res = {{"p", rep.p},
              {"phi", rep.phi_label},
              {"bound", number_json(rep.bound)},
              {"bound_kind", rep.bound_kind},
              {"tolerance", rep.tolerance},
              {"hypotheses_ok", rep.hypotheses_ok},
              {"hypothesis_note", rep.hypothesis_note},
              {"c0", number_json(rep.c0)},
              {"max_ratio", number_json(rep.max_ratio)},
              {"max_ratio_id", rep.max_ratio_id},
              {"violations", rep.violations},
              {"notes", notes},
              {"pass", rep.pass()},
              {"records", records}};
  if (rep.k1) res["k1"] = constant_json(*rep.k1, "k1", out.artifacts);
  if (rep.k_forward) res["k_forward"] = constant_json(*rep.k_forward, "k_forward", out.artifacts);
  if (rep.k_backward) res["k_backward"] = constant_json(*rep.k_backward, "k_backward", out.artifacts);
  out.report["result"] = res;
  if (!rep.pass()) out.finding = Finding::BoundViolation;
  logger()->info("verify: {} functions, max ratio {} vs bound {}", family.size(), rep.max_ratio, rep.bound);
  return out;
}

RunResult cmd_example(Reader& r, const RunOptions& opt) {
  r.only({"b", "p", "q", "alpha", "eps", "split", "grid", "quadrature", "workers", "seed"});
  ExampleConfig cfg;
  json grid_node = r.has("grid") ? r.raw("grid") : json::object();
  // the example's own grid defaults, overridable field by field
  json base = grid_json(ExampleConfig::default_grid());
  for (auto it = grid_node.begin(); it != grid_node.end(); ++it) base[it.key()] = it.value();
  if (opt.grid_policy) base["policy"] = *opt.grid_policy;
  json resolved;
  cfg.grid = config::parse_grid(&base, r.child_path("grid"), resolved);
  r.set("grid", resolved);
  cfg.quad = config::parse_quadrature(r.has("quadrature") ? &r.raw("quadrature") : nullptr,
                                      r.child_path("quadrature"), resolved);
  r.set("quadrature", resolved);
  cfg.workers = opt.workers > 0 ? opt.workers : static_cast<unsigned>(r.integer("workers", 1));
  r.set("workers", std::max(cfg.workers, 1u));
  r.set("seed", opt.seed ? *opt.seed : r.integer("seed", 1));
  cfg.b = r.number("b", cfg.b);
  cfg.p = r.number("p", cfg.p);
  cfg.q = r.number("q", cfg.q);
  cfg.alpha = r.number("alpha", cfg.alpha);
  if (r.has("eps")) cfg.eps = r.number("eps", 0.0);
  cfg.validate();
  r.set("eps", cfg.epsilon());

  const json empty = json::object();
  Reader sp(r.has("split") ? r.raw("split") : empty, r.child_path("split"));
  sp.only({"x_hi", "x_lo", "points"});
  const double x_hi = sp.number("x_hi", 1e-1);
  const double x_lo = sp.number("x_lo", 1e-3);
  const std::size_t points = sp.integer("points", 13);
  r.set("split", sp.resolved());

  const ExampleReport rep = run_example(cfg);
  const SplitReport split = split_integral_check(cfg, x_hi, x_lo, points);

  RunResult out;
  std::vector<Artifact> scratch;
  const auto part = [&](const ConstantReport& c, const std::string& file, const SupTerm& term) {
    json j = constant_json(c, file, scratch);
    out.artifacts.push_back({file + ".csv", trace_csv(term.trace, false)});
    out.artifacts.push_back({file + ".log.csv", trace_csv(term.trace, true)});
    j["trace_term"] = term.name;
    for (json& tj : j["terms"]) {
      const bool kept = tj["name"] == term.name;
      tj["trace_csv"] = kept ? json(file + ".csv") : json(nullptr);
      tj["log_trace_csv"] = kept ? json(file + ".log.csv") : json(nullptr);
    }
    return j;
  };
  const auto second = [](const ConstantReport& c) -> const SupTerm& {
    for (const SupTerm& t : c.terms)
      if (t.diverging_endpoint == "a") return t;
    return c.terms.back();
  };

  json overlay = json::array();
  for (const OverlayPoint& o : rep.overlay) {
    overlay.push_back({{"x", o.x},
                       {"t0", o.t0},
                       {"log_supremand", number_json(o.log_supremand)},
                       {"log_lower_bound", number_json(o.log_lower_bound)},
                       {"holds", o.holds}});
  }
  json asym = json::array();
  for (const InverseAsymptotic& a : rep.inverse_asymptotics)
    asym.push_back({{"x", a.x}, {"log_inverse", a.log_inverse}, {"log_approximation", a.log_approximation}});
  json rows = json::array();
  for (const SplitRow& s : split.rows) {
    rows.push_back({{"x", s.x},
                    {"delta", s.delta},
                    {"log_I", number_json(s.log_i)},
                    {"log_I_bound", number_json(s.log_i_bound)},
                    {"log_II", number_json(s.log_ii)},
                    {"log_II_bound", number_json(s.log_ii_bound)},
                    {"log_tail", number_json(s.log_tail)}});
  }
  out.report["result"] = {
      {"eps", rep.eps},
      {"k_pp", part(rep.k_pp, "k_pp", second(rep.k_pp))},
      {"k_pq", part(rep.k_pq, "k_pq", second(rep.k_pq))},
      {"k_phi", part(rep.k_phi, "k_phi", second(rep.k_phi))},
      {"certificates",
       {{"submultiplicative", rep.submultiplicative.pass()},
        {"submultiplicative_pairs", rep.submultiplicative.pairs_checked},
        {"lambda_convex", rep.lambda_convexity.pass()},
        {"lambda_pairs", rep.lambda_convexity.pairs_checked}}},
      {"log_growth", number_json(rep.log_growth)},
      {"overlay", overlay},
      {"inverse_asymptotics", asym},
      {"split",
       {{"rows", rows},
        {"I_bounded", split.i_bounded},
        {"II_below_bound", split.ii_below_bound},
        {"II_decreasing", split.ii_decreasing},
        {"tail_bounded", split.tail_bounded},
        {"delta_above_x", split.delta_above_x},
        {"pass", split.pass()}}},
      {"inconsistencies", rep.inconsistencies},
      {"consistent", rep.consistent() && split.pass()}};
  if (!rep.consistent() || !split.pass()) out.finding = Finding::Inconsistent;
  return out;
}

RunResult cmd_check_young(Reader& r, const RunOptions& opt) {
  r.only({"phi", "p", "certification", "workers", "seed", "grid", "quadrature"});
  read_common(r, opt);
  const YoungFunction phi = read_phi(r);
  const json empty = json::object();
  Reader cr(r.has("certification") ? r.raw("certification") : empty, r.child_path("certification"));
  cr.only({"lo", "hi", "points"});
  const double lo = cr.number("lo", 1e-6);
  const double hi = cr.number("hi", 1e6);
  const std::size_t points = cr.integer("points", 512);
  r.set("certification", cr.resolved());
  if (!(lo > 0.0 && hi > lo) || points < 2) config::config_error(cr.path(), "need 0 < lo < hi and points >= 2");
  const std::vector<double> grid = log_spaced(lo, hi, points);

  const ConvexityCertificate convex = certify_convexity(phi, grid);
  const SubmultiplicativityReport sub = certify_submultiplicative(phi, grid);
  json res = {{"phi", phi.label()},
              {"convexity", {{"pass", convex.pass()}, {"pairs", convex.pairs_checked},
                             {"violations", convex.violations.size()}}},
              {"submultiplicative", {{"pass", sub.pass()}, {"pairs", sub.pairs_checked},
                                     {"violations", sub.violation_count}}}};
  bool all = convex.pass() && sub.pass();
  if (r.has("p")) {
    const double p = read_p(r, 1.0, true);
    json lam = {{"p", p}};
    try {
      const LambdaTransform lt = lambda_transform(phi, p, grid);
      lam["pass"] = true;
      lam["pairs"] = lt.certificate.pairs_checked;
    } catch (const ConvexityViolation& e) {
      lam["pass"] = false;
      lam["witness"] = {{"s", e.witness().s}, {"t", e.witness().t}, {"gap", e.witness().gap}};
      all = false;
    }
    res["lambda_convexity"] = lam;
  }
  if (phi.strictly_increasing_on_nonneg()) {
    double worst = 0.0;
    for (double u : grid) {
      const double t = phi.inverse(u);
      worst = std::max(worst, std::abs(phi(t) / u - 1.0));
    }
    res["inverse_roundtrip_max_rel_error"] = worst;
    if (!(worst <= 1e-8)) all = false;
  }
  res["pass"] = all;
  RunResult out;
  out.report["result"] = res;
  if (!all) out.finding = Finding::BoundViolation;
  return out;
}

RunResult cmd_complementary(Reader& r, const RunOptions& opt) {
  r.only({"phi", "s", "workers", "seed", "grid", "quadrature"});
  read_common(r, opt);
  const YoungFunction phi = read_phi(r);
  const std::vector<double> s = r.numbers("s", {1.0, 2.0, 4.0});
  const ComplementaryFunction psi(phi);
  json table = json::array();
  std::string csv = "s,psi\n";
  for (double v : s) {
    const double val = psi(v);
    table.push_back({{"s", v}, {"psi", number_json(val)}});
    csv += fmt_double(v) + "," + fmt_double(val) + "\n";
  }
  RunResult out;
  out.report["result"] = {{"phi", phi.label()}, {"table", table}};
  out.artifacts.push_back({"complementary.csv", csv});
  return out;
}

}  // namespace

const char* to_string(Finding f) noexcept {
  switch (f) {
    case Finding::None: return "none";
    case Finding::BoundViolation: return "bound-violation";
    case Finding::Divergence: return "divergence";
    case Finding::Inconsistent: return "inconsistent";
  }
  return "?";
}

void configure_logging_from_env() {
  static std::once_flag once;
  std::call_once(once, [] {
    const char* env = std::getenv("ORLICZKIT_LOG");
    if (!env || !*env) return;
    const spdlog::level::level_enum lvl = spdlog::level::from_str(env);
    logger()->set_level(lvl);
  });
}

RunResult run_command(const std::string& command, const std::string& config_json, const RunOptions& opt) {
  configure_logging_from_env();
  const json doc = config::parse_document(config_json);
  Reader r(doc, "");
  RunResult out;
  if (command == "norm") {
    out = cmd_norm(r, opt);
  } else if (command == "constant") {
    out = cmd_constant(r, opt);
  } else if (command == "verify") {
    out = cmd_verify(r, opt);
  } else if (command == "example") {
    out = cmd_example(r, opt);
  } else if (command == "check-young") {
    out = cmd_check_young(r, opt);
  } else if (command == "complementary") {
    out = cmd_complementary(r, opt);
  } else {
    fail(ErrorCode::Config, "unknown command '" + command +
                                "' (norm, constant, verify, example, check-young, complementary)");
  }
  out.report["command"] = command;
  out.report["config"] = r.resolved();
  out.report["finding"] = to_string(out.finding);
  json names = json::array();
  for (const Artifact& a : out.artifacts) names.push_back(a.name);
  out.report["artifacts"] = names;
  logger()->debug("{} finished with finding {}", command, to_string(out.finding));
  return out;
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace orlicz
