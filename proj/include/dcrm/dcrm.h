/*
 * Copyright 2026 The DCRM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the discounted collective risk model engine.
 *
 * Every function that can fail returns a dcrm_status. On failure a message
 * is available from dcrm_last_error() on the calling thread until the next
 * call into the library from that thread. Handles are opaque, owned by the
 * caller and released with the matching *_free function; passing NULL to a
 * *_free function is a no-op.
 */
#ifndef DCRM_H
#define DCRM_H

#include <stddef.h>
#include <stdint.h>

#if defined(DCRM_BUILDING_LIBRARY)
#define DCRM_API __attribute__((visibility("default")))
#else
#define DCRM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcrm_status {
  DCRM_OK = 0,
  DCRM_ERR_INVALID_ARGUMENT = 1, /* a value violates a model invariant */
  DCRM_ERR_IO = 2,               /* a file could not be read or written */
  DCRM_ERR_CHECK_FAILED = 3,     /* a validation check failed */
  DCRM_ERR_DOMAIN = 4,           /* outside an m.g.f. convergence region */
  DCRM_ERR_PARSE = 5,            /* malformed config or trip log text */
  DCRM_ERR_INTERNAL = 6
} dcrm_status;

typedef struct dcrm_config dcrm_config;
typedef struct dcrm_simulation dcrm_simulation;
typedef struct dcrm_pricing dcrm_pricing;
typedef struct dcrm_report dcrm_report;

DCRM_API const char* dcrm_version(void);
DCRM_API const char* dcrm_status_name(dcrm_status status);
DCRM_API const char* dcrm_last_error(void);
/* Dotted config key of the last config validation error ("" if none). */
DCRM_API const char* dcrm_last_error_field(void);

/* ---- scenario configs -------------------------------------------------- */

DCRM_API dcrm_status dcrm_config_load(const char* path, dcrm_config** out);
/* base_dir resolves relative trip-log paths; may be NULL (current dir). */
DCRM_API dcrm_status dcrm_config_parse(const char* text, const char* base_dir,
                                       dcrm_config** out);
DCRM_API void dcrm_config_free(dcrm_config* config);

DCRM_API dcrm_status dcrm_config_set_paths(dcrm_config* config, uint64_t paths);
DCRM_API dcrm_status dcrm_config_set_seed(dcrm_config* config, uint64_t seed);
DCRM_API dcrm_status dcrm_config_set_full_trace(dcrm_config* config, int full_trace);
DCRM_API uint64_t dcrm_config_paths(const dcrm_config* config);
DCRM_API uint64_t dcrm_config_seed(const dcrm_config* config);
/* 1 when the config has a mileage_affine intensity and a mileage model. */
DCRM_API int dcrm_config_is_payd(const dcrm_config* config);

/* ---- simulation of discounted losses ------------------------------------ */

typedef struct dcrm_summary {
  uint64_t paths;
  double mean;
  double mean_stderr;
  double variance;
  double variance_stderr;
  double mean_count;
  int has_analytic; /* nonzero when analytic_mean/variance are filled */
  double analytic_mean;
  double analytic_variance;
} dcrm_summary;

/* threads only changes speed; results are identical for any value >= 1. */
DCRM_API dcrm_status dcrm_simulate(const dcrm_config* config, unsigned threads,
                                   dcrm_simulation** out);
DCRM_API void dcrm_simulation_free(dcrm_simulation* simulation);
DCRM_API size_t dcrm_simulation_size(const dcrm_simulation* simulation);
/* Copies min(capacity, size) values; either output pointer may be NULL. */
DCRM_API dcrm_status dcrm_simulation_values(const dcrm_simulation* simulation, double* z,
                                            uint64_t* counts, size_t capacity);
DCRM_API dcrm_status dcrm_simulation_summary(const dcrm_simulation* simulation,
                                             dcrm_summary* out);
/* Writes paths.csv and summary.csv (plus arrivals.csv with a full trace)
 * into out_dir, all or nothing. */
DCRM_API dcrm_status dcrm_simulation_write(const dcrm_simulation* simulation,
                                           const char* out_dir);

/* ---- PAYD pricing -------------------------------------------------------- */

typedef struct dcrm_quote {
  double net_premium;
  double standard_error;
  double per_expected_mile;
  double expected_mileage;
  uint64_t n_outer;
} dcrm_quote;

/* Uses the config's path count as the number of mileage paths. */
DCRM_API dcrm_status dcrm_price(const dcrm_config* config, unsigned threads,
                                dcrm_pricing** out);
DCRM_API void dcrm_pricing_free(dcrm_pricing* pricing);
DCRM_API dcrm_status dcrm_pricing_quote(const dcrm_pricing* pricing, dcrm_quote* out);
/* Human-readable block; owned by the handle. */
DCRM_API const char* dcrm_pricing_text(const dcrm_pricing* pricing);
/* Writes quote.csv and quote.txt (plus outer_paths.csv with a full trace). */
DCRM_API dcrm_status dcrm_pricing_write(const dcrm_pricing* pricing, const char* out_dir);

/* M_Z(u) for the configured scenario: quadrature for deterministic
 * intensities (stderr 0), outer Monte Carlo over the config's path count
 * for mileage-driven ones. */
DCRM_API dcrm_status dcrm_mgf(const dcrm_config* config, double u, unsigned threads,
                              double* value, double* standard_error);

/* ---- validation ---------------------------------------------------------- */

typedef struct dcrm_validate_options {
  uint64_t seed;
  unsigned threads;
  double perturb_mean; /* fault injection; 0 in normal runs */
} dcrm_validate_options;

typedef struct dcrm_check {
  const char* criterion;
  const char* name;
  double statistic;
  double threshold;
  int passed;
  const char* detail;
} dcrm_check;

DCRM_API void dcrm_validate_options_init(dcrm_validate_options* options);
/* config may be NULL for the built-in suite. A report with failed checks
 * is still DCRM_OK; inspect dcrm_report_passed(). */
DCRM_API dcrm_status dcrm_validate(const dcrm_config* config,
                                   const dcrm_validate_options* options, dcrm_report** out);
DCRM_API void dcrm_report_free(dcrm_report* report);
DCRM_API int dcrm_report_passed(const dcrm_report* report);
DCRM_API size_t dcrm_report_size(const dcrm_report* report);
/* Strings in *out are owned by the report. */
DCRM_API dcrm_status dcrm_report_check(const dcrm_report* report, size_t index,
                                       dcrm_check* out);
DCRM_API const char* dcrm_report_table(const dcrm_report* report);

/* ---- closed forms -------------------------------------------------------- */

DCRM_API dcrm_status dcrm_analytic_mean(double mu1, double lambda, double delta, double t,
                                        double* out);
DCRM_API dcrm_status dcrm_analytic_variance(double mu2, double lambda, double delta, double t,
                                            double* out);
DCRM_API dcrm_status dcrm_mgf_exponential_closed(double beta, double lambda, double delta,
                                                 double t, double u, double* out);

#ifdef __cplusplus
}
#endif

#endif /* DCRM_H */
