#ifndef ORLICZKIT_ORLICZKIT_H
#define ORLICZKIT_ORLICZKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OK_API __declspec(dllexport)
#else
#define OK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ok_status {
  OK_SUCCESS = 0,
  OK_ERR_INVALID_ARGUMENT = 1,
  OK_ERR_CONFIG = 2,
  OK_ERR_NOT_INVERTIBLE = 3,
  OK_ERR_BRACKET_FAILURE = 4,
  OK_ERR_UNBOUNDED_SUP = 5,
  OK_ERR_CONVEXITY_VIOLATION = 6,
  OK_ERR_QUADRATURE_NONCONVERGENCE = 7,
  OK_ERR_ZERO_TOTAL_MASS = 8,
  OK_ERR_ZERO_WEIGHT = 9,
  OK_ERR_HYPOTHESIS_VIOLATION = 10,
  OK_ERR_DEGENERATE_TEST_FUNCTION = 11,
  OK_ERR_BAD_ALPHA = 12,
  OK_ERR_NON_INTEGRABLE_INTEGRAND = 13,
  OK_ERR_BOUND_VIOLATION = 14,
  OK_ERR_NULL_POINTER = 100,
  OK_ERR_INTERNAL = 101
} ok_status;

/* What a successful run found. */
typedef enum ok_finding {
  OK_FINDING_NONE = 0,
  OK_FINDING_BOUND_VIOLATION = 2,
  OK_FINDING_DIVERGENCE = 3,
  OK_FINDING_INCONSISTENT = 5
} ok_finding;

typedef struct ok_options ok_options;
typedef struct ok_result ok_result;
typedef struct ok_young ok_young;
typedef struct ok_measure ok_measure;

OK_API const char* ok_version(void);
OK_API const char* ok_status_string(ok_status status);
/* Message of the last failed call on this thread ("" if none). */
OK_API const char* ok_last_error(void);

OK_API ok_status ok_options_create(ok_options** out);
OK_API void ok_options_destroy(ok_options* opts);
OK_API ok_status ok_options_set_workers(ok_options* opts, unsigned workers);
OK_API ok_status ok_options_set_seed(ok_options* opts, uint64_t seed);
OK_API ok_status ok_options_set_grid_policy(ok_options* opts, const char* policy);

/* Runs one command (norm, constant, verify, example, check-young,
   complementary) on a JSON config. opts may be NULL. */
OK_API ok_status ok_run(const char* command, const char* config_json, const ok_options* opts, ok_result** out);
OK_API void ok_result_destroy(ok_result* result);
/* Report JSON, valid until the result is destroyed. */
OK_API const char* ok_result_json(const ok_result* result);
OK_API ok_finding ok_result_finding(const ok_result* result);
OK_API size_t ok_result_artifact_count(const ok_result* result);
OK_API const char* ok_result_artifact_name(const ok_result* result, size_t index);
OK_API const char* ok_result_artifact_data(const ok_result* result, size_t index);

/* Direct objects, built from the same JSON specs the configs use, e.g.
   {"type":"power","q":2} or {"type":"lebesgue","a":0,"b":1}. */
OK_API ok_status ok_young_create(const char* spec_json, ok_young** out);
OK_API void ok_young_destroy(ok_young* phi);
OK_API ok_status ok_young_eval(const ok_young* phi, double t, double* out);
OK_API ok_status ok_young_inverse(const ok_young* phi, double u, double* out);
OK_API ok_status ok_young_complementary(const ok_young* phi, double s, double* out);

OK_API ok_status ok_measure_create(const char* spec_json, ok_measure** out);
OK_API void ok_measure_destroy(ok_measure* mu);
OK_API ok_status ok_measure_interval_mass(const ok_measure* mu, double x, double y, double* out);

/* Gauge norm of the piecewise-linear function through (knots[i], values[i]). */
OK_API ok_status ok_gauge_norm_pl(const ok_young* phi, const ok_measure* mu, const double* knots,
                                  const double* values, size_t n, double* out);
/* Gauge norm of the step function with levels[i] on [breaks[i], breaks[i+1]). */
OK_API ok_status ok_gauge_norm_step(const ok_young* phi, const ok_measure* mu, const double* breaks,
                                    const double* levels, size_t n_breaks, double* out);

#ifdef __cplusplus
}
#endif

#endif
