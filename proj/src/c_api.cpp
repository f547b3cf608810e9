// Copyright 2026 The DCRM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dcrm/dcrm.h"

#include <algorithm>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "dcrm/config.hpp"
#include "dcrm/dcrm.hpp"
#include "dcrm/error.hpp"
#include "dcrm/output.hpp"
#include "dcrm/payd.hpp"
#include "dcrm/validation.hpp"

struct dcrm_config {
  dcrm::ScenarioConfig config;
};

struct dcrm_simulation {
  dcrm::SimulationResult result;
  std::optional<dcrm::Moments> analytic;
};

struct dcrm_pricing {
  dcrm::PaydPolicy policy;
  dcrm::PremiumQuote quote;
  std::vector<dcrm::OuterPath> paths;
  bool full_trace;
  std::string text;
};

struct dcrm_report {
  dcrm::ValidationReport report;
  std::string table;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_field;

dcrm_status fail(dcrm_status status, const char* what) {
  g_error = what;
  return status;
}

template <class F>
dcrm_status guarded(F&& body) {
  g_error.clear();
  g_error_field.clear();
  try {
    body();
    return DCRM_OK;
  } catch (const dcrm::ConfigError& e) {
    g_error_field = e.field();
    return fail(DCRM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const dcrm::ParseError& e) {
    return fail(DCRM_ERR_PARSE, e.what());
  } catch (const dcrm::DomainError& e) {
    return fail(DCRM_ERR_DOMAIN, e.what());
  } catch (const dcrm::ValidationError& e) {
    return fail(DCRM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const dcrm::IoError& e) {
    return fail(DCRM_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(DCRM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DCRM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DCRM_ERR_INTERNAL, "unknown error");
  }
}

#define DCRM_REQUIRE(ptr)                                                  \
  do {                                                                     \
    if (!(ptr)) {                                                          \
      g_error_field.clear();                                               \
      return fail(DCRM_ERR_INVALID_ARGUMENT, #ptr " must not be NULL");    \
    }                                                                      \
  } while (0)

unsigned worker_count(unsigned threads) { return threads == 0 ? 1 : threads; }

}  // namespace

extern "C" {

const char* dcrm_version(void) { return "1.0.0"; }

const char* dcrm_status_name(dcrm_status status) {
  switch (status) {
    case DCRM_OK:
      return "ok";
    case DCRM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case DCRM_ERR_IO:
      return "i/o error";
    case DCRM_ERR_CHECK_FAILED:
      return "check failed";
    case DCRM_ERR_DOMAIN:
      return "domain error";
    case DCRM_ERR_PARSE:
      return "parse error";
    case DCRM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* dcrm_last_error(void) { return g_error.c_str(); }

const char* dcrm_last_error_field(void) { return g_error_field.c_str(); }

dcrm_status dcrm_config_load(const char* path, dcrm_config** out) {
  DCRM_REQUIRE(path);
  DCRM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new dcrm_config{dcrm::load_scenario_config(path)}; });
}

dcrm_status dcrm_config_parse(const char* text, const char* base_dir, dcrm_config** out) {
  DCRM_REQUIRE(text);
  DCRM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new dcrm_config{dcrm::parse_scenario_config(text, base_dir ? base_dir : ".")};
  });
}

void dcrm_config_free(dcrm_config* config) { delete config; }

dcrm_status dcrm_config_set_paths(dcrm_config* config, uint64_t paths) {
  DCRM_REQUIRE(config);
  if (paths < 1) {
    g_error_field = "simulation.paths";
    return fail(DCRM_ERR_INVALID_ARGUMENT, "simulation.paths: must be >= 1");
  }
  config->config.simulation.paths = paths;
  return DCRM_OK;
}

dcrm_status dcrm_config_set_seed(dcrm_config* config, uint64_t seed) {
  DCRM_REQUIRE(config);
  config->config.simulation.seed = seed;
  return DCRM_OK;
}

dcrm_status dcrm_config_set_full_trace(dcrm_config* config, int full_trace) {
  DCRM_REQUIRE(config);
  config->config.simulation.full_trace = full_trace != 0;
  return DCRM_OK;
}

uint64_t dcrm_config_paths(const dcrm_config* config) {
  return config ? config->config.simulation.paths : 0;
}

uint64_t dcrm_config_seed(const dcrm_config* config) {
  return config ? config->config.simulation.seed : 0;
}

int dcrm_config_is_payd(const dcrm_config* config) {
  return config && std::holds_alternative<dcrm::MileageAffine>(config->config.counting) &&
                 config->config.mileage.has_value()
             ? 1
             : 0;
}

dcrm_status dcrm_simulate(const dcrm_config* config, unsigned threads, dcrm_simulation** out) {
  DCRM_REQUIRE(config);
  DCRM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const dcrm::ScenarioConfig& cfg = config->config;
    const dcrm::DcrmScenario scenario = cfg.scenario();
    dcrm::SimulationOptions options;
    options.n_paths = cfg.simulation.paths;
    options.seed = cfg.simulation.seed;
    options.threads = worker_count(threads);
    options.full_trace = cfg.simulation.full_trace;
    auto sim = std::make_unique<dcrm_simulation>();
    sim->result = dcrm::simulate_zt(scenario, options);
    sim->analytic = dcrm::analytic_moments(scenario);
    *out = sim.release();
  });
}

void dcrm_simulation_free(dcrm_simulation* simulation) { delete simulation; }

size_t dcrm_simulation_size(const dcrm_simulation* simulation) {
  return simulation ? simulation->result.z.size() : 0;
}

dcrm_status dcrm_simulation_values(const dcrm_simulation* simulation, double* z,
                                   uint64_t* counts, size_t capacity) {
  DCRM_REQUIRE(simulation);
  const auto& r = simulation->result;
  const size_t n = std::min(capacity, r.z.size());
  for (size_t i = 0; i < n; ++i) {
    if (z) {
      z[i] = r.z[i];
    }
    if (counts) {
      counts[i] = r.counts[i];
    }
  }
  return DCRM_OK;
}

dcrm_status dcrm_simulation_summary(const dcrm_simulation* simulation, dcrm_summary* out) {
  DCRM_REQUIRE(simulation);
  DCRM_REQUIRE(out);
  return guarded([&] {
    const auto& r = simulation->result;
    const dcrm::SampleSummary z = dcrm::summarize(r.z);
    std::vector<double> counts(r.counts.begin(), r.counts.end());
    *out = dcrm_summary{};
    out->paths = r.n_paths;
    out->mean = z.mean;
    out->mean_stderr = z.mean_se;
    out->variance = z.variance;
    out->variance_stderr = z.variance_se;
    out->mean_count = dcrm::summarize(counts).mean;
    if (simulation->analytic) {
      out->has_analytic = 1;
      out->analytic_mean = simulation->analytic->mean;
      out->analytic_variance = simulation->analytic->variance;
    }
  });
}

dcrm_status dcrm_simulation_write(const dcrm_simulation* simulation, const char* out_dir) {
  DCRM_REQUIRE(simulation);
  DCRM_REQUIRE(out_dir);
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> files;
    std::ostringstream paths;
    dcrm::write_paths_csv(paths, simulation->result);
    files.emplace_back("paths.csv", paths.str());
    std::ostringstream summary;
    dcrm::write_summary_csv(summary, simulation->result, simulation->analytic);
    files.emplace_back("summary.csv", summary.str());
    if (simulation->result.has_trace()) {
      std::ostringstream arrivals;
      dcrm::write_arrivals_csv(arrivals, simulation->result);
      files.emplace_back("arrivals.csv", arrivals.str());
    }
    dcrm::write_files_atomically(out_dir, files);
  });
}

dcrm_status dcrm_price(const dcrm_config* config, unsigned threads, dcrm_pricing** out) {
  DCRM_REQUIRE(config);
  DCRM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const dcrm::ScenarioConfig& cfg = config->config;
    dcrm::PaydPolicy policy = cfg.policy();
    std::vector<dcrm::OuterPath> paths = dcrm::outer_paths(
        policy, {cfg.simulation.paths, cfg.simulation.seed, worker_count(threads)});
    const dcrm::PremiumQuote quote = dcrm::quote_from_paths(paths);
    std::string text = dcrm::format_quote_text(quote, policy);
    *out = new dcrm_pricing{std::move(policy), quote, std::move(paths),
                            cfg.simulation.full_trace, std::move(text)};
  });
}

void dcrm_pricing_free(dcrm_pricing* pricing) { delete pricing; }

dcrm_status dcrm_pricing_quote(const dcrm_pricing* pricing, dcrm_quote* out) {
  DCRM_REQUIRE(pricing);
  DCRM_REQUIRE(out);
  out->net_premium = pricing->quote.net_premium;
  out->standard_error = pricing->quote.standard_error;
  out->per_expected_mile = pricing->quote.per_expected_mile;
  out->expected_mileage = pricing->quote.expected_mileage;
  out->n_outer = pricing->quote.n_outer_paths;
  return DCRM_OK;
}

const char* dcrm_pricing_text(const dcrm_pricing* pricing) {
  return pricing ? pricing->text.c_str() : "";
}

dcrm_status dcrm_pricing_write(const dcrm_pricing* pricing, const char* out_dir) {
  DCRM_REQUIRE(pricing);
  DCRM_REQUIRE(out_dir);
  return guarded([&] {
    std::vector<std::pair<std::string, std::string>> files;
    std::ostringstream quote;
    dcrm::write_quote_csv(quote, pricing->quote);
    files.emplace_back("quote.csv", quote.str());
    files.emplace_back("quote.txt", pricing->text);
    if (pricing->full_trace) {
      std::ostringstream paths;
      dcrm::write_outer_paths_csv(paths, pricing->paths);
      files.emplace_back("outer_paths.csv", paths.str());
    }
    dcrm::write_files_atomically(out_dir, files);
  });
}

dcrm_status dcrm_mgf(const dcrm_config* config, double u, unsigned threads, double* value,
                     double* standard_error) {
  DCRM_REQUIRE(config);
  DCRM_REQUIRE(value);
  return guarded([&] {
    const dcrm::ScenarioConfig& cfg = config->config;
    dcrm::Estimate est;
    if (std::holds_alternative<dcrm::MileageAffine>(cfg.counting)) {
      est = dcrm::mgf_cox(cfg.policy(), u,
                          {cfg.simulation.paths, cfg.simulation.seed, worker_count(threads)});
    } else {
      est.value = dcrm::mgf_nhpp(cfg.claim, std::get<dcrm::Intensity>(cfg.counting), cfg.delta,
                                 cfg.horizon, u);
    }
    *value = est.value;
    if (standard_error) {
      *standard_error = est.standard_error;
    }
  });
}

void dcrm_validate_options_init(dcrm_validate_options* options) {
  if (!options) {
    return;
  }
  const dcrm::ValidationOptions defaults;
  options->seed = defaults.seed;
  options->threads = defaults.threads;
  options->perturb_mean = defaults.perturb_mean;
}

dcrm_status dcrm_validate(const dcrm_config* config, const dcrm_validate_options* options,
                          dcrm_report** out) {
  DCRM_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    dcrm::ValidationOptions opts;
    if (options) {
      opts.seed = options->seed;
      opts.threads = worker_count(options->threads);
      opts.perturb_mean = options->perturb_mean;
    }
    auto report = std::make_unique<dcrm_report>();
    report->report = config ? dcrm::run_scenario_suite(config->config, opts)
                            : dcrm::run_builtin_suite(opts);
    report->table = report->report.format_table();
    *out = report.release();
  });
}

void dcrm_report_free(dcrm_report* report) { delete report; }

int dcrm_report_passed(const dcrm_report* report) {
  return report && report->report.all_passed() ? 1 : 0;
}

size_t dcrm_report_size(const dcrm_report* report) {
  return report ? report->report.checks.size() : 0;
}

dcrm_status dcrm_report_check(const dcrm_report* report, size_t index, dcrm_check* out) {
  DCRM_REQUIRE(report);
  DCRM_REQUIRE(out);
  if (index >= report->report.checks.size()) {
    return fail(DCRM_ERR_INVALID_ARGUMENT, "check index out of range");
  }
  const dcrm::CheckResult& c = report->report.checks[index];
  out->criterion = c.criterion.c_str();
  out->name = c.name.c_str();
  out->statistic = c.statistic;
  out->threshold = c.threshold;
  out->passed = c.passed ? 1 : 0;
  out->detail = c.detail.c_str();
  return DCRM_OK;
}

const char* dcrm_report_table(const dcrm_report* report) {
  return report ? report->table.c_str() : "";
}

dcrm_status dcrm_analytic_mean(double mu1, double lambda, double delta, double t, double* out) {
  DCRM_REQUIRE(out);
  return guarded([&] { *out = dcrm::analytic_mean(mu1, lambda, delta, t); });
}

dcrm_status dcrm_analytic_variance(double mu2, double lambda, double delta, double t,
                                   double* out) {
  DCRM_REQUIRE(out);
  return guarded([&] { *out = dcrm::analytic_variance(mu2, lambda, delta, t); });
}

dcrm_status dcrm_mgf_exponential_closed(double beta, double lambda, double delta, double t,
                                        double u, double* out) {
  DCRM_REQUIRE(out);
  return guarded([&] { *out = dcrm::mgf_exponential_closed(beta, lambda, delta, t, u); });
}

}  // extern "C"
