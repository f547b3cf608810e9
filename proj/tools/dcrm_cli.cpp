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

// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcrm/dcrm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitChecksFailed = 3;

int exit_code(dcrm_status status) {
  switch (status) {
    case DCRM_OK:
      return kExitOk;
    case DCRM_ERR_IO:
      return kExitIo;
    case DCRM_ERR_CHECK_FAILED:
      return kExitChecksFailed;
    default:
      return kExitInvalid;
  }
}

int report_error(const char* command, dcrm_status status) {
  const std::string field = dcrm_last_error_field();
  std::fprintf(stderr, "dcrm %s: %s", command, dcrm_status_name(status));
  if (!field.empty()) {
    std::fprintf(stderr, " in field '%s'", field.c_str());
  }
  std::fprintf(stderr, ": %s\n", dcrm_last_error());
  return exit_code(status);
}

struct ConfigDeleter {
  void operator()(dcrm_config* c) const { dcrm_config_free(c); }
};
struct SimulationDeleter {
  void operator()(dcrm_simulation* s) const { dcrm_simulation_free(s); }
};
struct PricingDeleter {
  void operator()(dcrm_pricing* p) const { dcrm_pricing_free(p); }
};
struct ReportDeleter {
  void operator()(dcrm_report* r) const { dcrm_report_free(r); }
};

using ConfigPtr = std::unique_ptr<dcrm_config, ConfigDeleter>;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> paths;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& opts, bool config_required) {
  auto* config = cmd->add_option("--config", opts.config, "Scenario config file");
  if (config_required) {
    config->required();
  }
  cmd->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  cmd->add_option("--paths", opts.paths, "Path count (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", opts.threads, "Worker threads; never changes results")
      ->check(CLI::PositiveNumber);
}

// Loads the config and applies command-line overrides.
dcrm_status load_config(const char* command, const Common& opts, ConfigPtr& out, int& code) {
  dcrm_config* raw = nullptr;
  dcrm_status status = dcrm_config_load(opts.config.c_str(), &raw);
  out.reset(raw);
  if (status == DCRM_OK && opts.paths) {
    status = dcrm_config_set_paths(out.get(), *opts.paths);
  }
  if (status == DCRM_OK && opts.seed) {
    status = dcrm_config_set_seed(out.get(), *opts.seed);
  }
  if (status != DCRM_OK) {
    code = report_error(command, status);
  }
  return status;
}

int run_simulate(const Common& opts) {
  ConfigPtr config;
  int code = kExitOk;
  if (load_config("simulate", opts, config, code) != DCRM_OK) {
    return code;
  }
  dcrm_simulation* raw = nullptr;
  dcrm_status status = dcrm_simulate(config.get(), opts.threads, &raw);
  std::unique_ptr<dcrm_simulation, SimulationDeleter> sim(raw);
  if (status != DCRM_OK) {
    return report_error("simulate", status);
  }
  status = dcrm_simulation_write(sim.get(), opts.out.c_str());
  if (status != DCRM_OK) {
    return report_error("simulate", status);
  }
  dcrm_summary summary;
  dcrm_simulation_summary(sim.get(), &summary);
  std::printf("paths %llu  mean %.10g (se %.10g)  variance %.10g (se %.10g)\n",
              static_cast<unsigned long long>(summary.paths), summary.mean, summary.mean_stderr,
              summary.variance, summary.variance_stderr);
  if (summary.has_analytic) {
    std::printf("analytic mean %.10g  analytic variance %.10g\n", summary.analytic_mean,
                summary.analytic_variance);
  }
  return kExitOk;
}

int run_price(const Common& opts) {
  ConfigPtr config;
  int code = kExitOk;
  if (load_config("price", opts, config, code) != DCRM_OK) {
    return code;
  }
  dcrm_pricing* raw = nullptr;
  dcrm_status status = dcrm_price(config.get(), opts.threads, &raw);
  std::unique_ptr<dcrm_pricing, PricingDeleter> pricing(raw);
  if (status != DCRM_OK) {
    return report_error("price", status);
  }
  status = dcrm_pricing_write(pricing.get(), opts.out.c_str());
  if (status != DCRM_OK) {
    return report_error("price", status);
  }
  std::fputs(dcrm_pricing_text(pricing.get()), stdout);
  return kExitOk;
}

int run_validate(const Common& opts, double perturb_mean) {
  ConfigPtr config;
  if (!opts.config.empty()) {
    int code = kExitOk;
    if (load_config("validate", opts, config, code) != DCRM_OK) {
      return code;
    }
  }
  dcrm_validate_options options;
  dcrm_validate_options_init(&options);
  if (opts.seed) {
    options.seed = *opts.seed;
  } else if (config) {
    options.seed = dcrm_config_seed(config.get());
  }
  options.threads = opts.threads;
  options.perturb_mean = perturb_mean;

  dcrm_report* raw = nullptr;
  const dcrm_status status = dcrm_validate(config.get(), &options, &raw);
  std::unique_ptr<dcrm_report, ReportDeleter> report(raw);
  if (status != DCRM_OK) {
    return report_error("validate", status);
  }
  const char* table = dcrm_report_table(report.get());
  std::fputs(table, stdout);
  if (!opts.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opts.out, ec);
    std::ofstream file(std::filesystem::path(opts.out) / "validation.txt");
    file << table;
    if (!file) {
      std::fprintf(stderr, "dcrm validate: cannot write report into '%s'\n", opts.out.c_str());
      return kExitIo;
    }
  }
  return dcrm_report_passed(report.get()) ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discounted collective risk model and pay-as-you-drive pricing engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", dcrm_version());

  Common sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo paths of the discounted loss");
  add_common(simulate, sim_opts, true);
  simulate->add_option("--out", sim_opts.out, "Output directory")->required();

  Common price_opts;
  auto* price = app.add_subcommand("price", "Net PAYD premium for a mileage-driven policy");
  add_common(price, price_opts, true);
  price->add_option("--out", price_opts.out, "Output directory")->required();

  Common validate_opts;
  double perturb_mean = 0.0;
  auto* validate = app.add_subcommand("validate", "Run the statistical validation suite");
  add_common(validate, validate_opts, false);
  validate->add_option("--out", validate_opts.out, "Directory for validation.txt");
  validate->add_option("--perturb-mean", perturb_mean,
                       "Scale analytic means by (1 + x) to check the suite detects it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*simulate) {
    return run_simulate(sim_opts);
  }
  if (*price) {
    return run_price(price_opts);
  }
  return run_validate(validate_opts, perturb_mean);
}
