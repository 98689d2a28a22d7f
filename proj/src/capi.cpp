#include "orliczkit/orliczkit.h"

#include <memory>
#include <new>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "gauge.hpp"
#include "runner.hpp"

struct ok_options {
  orlicz::RunOptions opt;
};

struct ok_result {
  std::string json;
  orlicz::RunResult run;
};

struct ok_young {
  orlicz::YoungFunction phi;
};

struct ok_measure {
  orlicz::MeasureSpec mu;
};

namespace {

thread_local std::string last_error;

template <typename F>
ok_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return OK_SUCCESS;
  } catch (const orlicz::Error& e) {
    last_error = e.what();
    return static_cast<ok_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return OK_ERR_INTERNAL;
}

ok_status null_arg(const char* what) {
  last_error = std::string(what) + " is NULL";
  return OK_ERR_NULL_POINTER;
}

}  // namespace

extern "C" {

const char* ok_version(void) { return "0.1.0"; }

const char* ok_status_string(ok_status status) {
  switch (status) {
    case OK_SUCCESS: return "success";
    case OK_ERR_NULL_POINTER: return "null pointer";
    case OK_ERR_INTERNAL: return "internal error";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(orlicz::ErrorCode::BoundViolation))
    return orlicz::to_string(static_cast<orlicz::ErrorCode>(code));
  return "unknown status";
}

const char* ok_last_error(void) { return last_error.c_str(); }

ok_status ok_options_create(ok_options** out) {
  if (!out) return null_arg("out");
  return guard([&] { *out = new ok_options(); });
}

void ok_options_destroy(ok_options* opts) { delete opts; }

ok_status ok_options_set_workers(ok_options* opts, unsigned workers) {
  if (!opts) return null_arg("opts");
  opts->opt.workers = workers;
  return OK_SUCCESS;
}

ok_status ok_options_set_seed(ok_options* opts, uint64_t seed) {
  if (!opts) return null_arg("opts");
  opts->opt.seed = seed;
  return OK_SUCCESS;
}

ok_status ok_options_set_grid_policy(ok_options* opts, const char* policy) {
  if (!opts) return null_arg("opts");
  if (!policy) return null_arg("policy");
  return guard([&] {
    orlicz::grid_policy_from_string(policy);
    opts->opt.grid_policy = std::string(policy);
  });
}

ok_status ok_run(const char* command, const char* config_json, const ok_options* opts, ok_result** out) {
  if (!command) return null_arg("command");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    auto res = std::make_unique<ok_result>();
    res->run = orlicz::run_command(command, config_json ? config_json : "{}", opts ? opts->opt : orlicz::RunOptions{});
    res->json = orlicz::dump_report(res->run.report);
    *out = res.release();
  });
}

void ok_result_destroy(ok_result* result) { delete result; }

const char* ok_result_json(const ok_result* result) { return result ? result->json.c_str() : ""; }

ok_finding ok_result_finding(const ok_result* result) {
  return result ? static_cast<ok_finding>(static_cast<int>(result->run.finding)) : OK_FINDING_NONE;
}

size_t ok_result_artifact_count(const ok_result* result) { return result ? result->run.artifacts.size() : 0; }

const char* ok_result_artifact_name(const ok_result* result, size_t index) {
  if (!result || index >= result->run.artifacts.size()) return nullptr;
  return result->run.artifacts[index].name.c_str();
}

const char* ok_result_artifact_data(const ok_result* result, size_t index) {
  if (!result || index >= result->run.artifacts.size()) return nullptr;
  return result->run.artifacts[index].content.c_str();
}

ok_status ok_young_create(const char* spec_json, ok_young** out) {
  if (!spec_json) return null_arg("spec_json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    nlohmann::json resolved;
    const nlohmann::json doc = orlicz::config::parse_document(spec_json);
    *out = new ok_young{orlicz::config::parse_young(doc, "phi", resolved)};
  });
}

void ok_young_destroy(ok_young* phi) { delete phi; }

ok_status ok_young_eval(const ok_young* phi, double t, double* out) {
  if (!phi) return null_arg("phi");
  if (!out) return null_arg("out");
  return guard([&] { *out = phi->phi(t); });
}

ok_status ok_young_inverse(const ok_young* phi, double u, double* out) {
  if (!phi) return null_arg("phi");
  if (!out) return null_arg("out");
  return guard([&] { *out = phi->phi.inverse(u); });
}

ok_status ok_young_complementary(const ok_young* phi, double s, double* out) {
  if (!phi) return null_arg("phi");
  if (!out) return null_arg("out");
  return guard([&] { *out = orlicz::complementary(phi->phi, s); });
}

ok_status ok_measure_create(const char* spec_json, ok_measure** out) {
  if (!spec_json) return null_arg("spec_json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    nlohmann::json resolved;
    const nlohmann::json doc = orlicz::config::parse_document(spec_json);
    *out = new ok_measure{orlicz::config::parse_measure(doc, "measure", resolved)};
  });
}

void ok_measure_destroy(ok_measure* mu) { delete mu; }

ok_status ok_measure_interval_mass(const ok_measure* mu, double x, double y, double* out) {
  if (!mu) return null_arg("mu");
  if (!out) return null_arg("out");
  return guard([&] { *out = orlicz::interval_mass(mu->mu, x, y); });
}

ok_status ok_gauge_norm_pl(const ok_young* phi, const ok_measure* mu, const double* knots, const double* values,
                           size_t n, double* out) {
  if (!phi) return null_arg("phi");
  if (!mu) return null_arg("mu");
  if (!knots || !values) return null_arg("knots/values");
  if (!out) return null_arg("out");
  return guard([&] {
    const orlicz::PiecewiseLinearFunction f(std::vector<double>(knots, knots + n),
                                            std::vector<double>(values, values + n));
    *out = orlicz::gauge_norm(f, phi->phi, mu->mu);
  });
}

ok_status ok_gauge_norm_step(const ok_young* phi, const ok_measure* mu, const double* breaks, const double* levels,
                             size_t n_breaks, double* out) {
  if (!phi) return null_arg("phi");
  if (!mu) return null_arg("mu");
  if (!breaks || !levels) return null_arg("breaks/levels");
  if (!out) return null_arg("out");
  if (n_breaks < 2) {
    last_error = "need at least two breaks";
    return OK_ERR_INVALID_ARGUMENT;
  }
  return guard([&] {
    const orlicz::StepFunction f(std::vector<double>(breaks, breaks + n_breaks),
                                 std::vector<double>(levels, levels + n_breaks - 1));
    *out = orlicz::gauge_norm(f, phi->phi, mu->mu);
  });
}

}  // extern "C"
