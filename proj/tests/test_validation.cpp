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


#include <algorithm>
#include <string>

#include "dcrm/config.hpp"
#include "dcrm/validation.hpp"
#include "doctest.h"

namespace {

dcrm::ValidationOptions small_options() {
  dcrm::ValidationOptions o;
  o.seed = 3;
  o.grid_paths = 20000;
  o.mgf_paths = 100000;
  o.martingale_paths = 20000;
  o.cox_paths = 20000;
  o.outer_paths = 2000;
  return o;
}

const dcrm::CheckResult& find(const dcrm::ValidationReport& report, const std::string& criterion,
                              const std::string& prefix = "") {
  const auto it = std::find_if(report.checks.begin(), report.checks.end(), [&](const auto& c) {
    return c.criterion == criterion && c.name.starts_with(prefix);
  });
  REQUIRE(it != report.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("built-in suite at reduced sample sizes") {
  const auto report = dcrm::run_builtin_suite(small_options());
  for (const char* id : {"1", "2", "3", "4", "5a", "5b", "5c", "6", "7a", "7b", "8"}) {
    CAPTURE(id);
    CHECK(find(report, id).passed);
  }
  CHECK(report.all_passed());
  const std::string table = report.format_table();
  CHECK(table.find("PASS") != std::string::npos);
  CHECK(table.find("FAIL") == std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') >= static_cast<long>(report.checks.size()));
}

TEST_CASE("analytic checks are exact enough") {
  const auto quad = dcrm::check_mgf_quadrature({});
  REQUIRE(quad.size() == 1);
  CHECK(quad[0].statistic <= 1e-8);
  for (const auto& row : dcrm::check_limits({})) {
    CAPTURE(row.criterion);
    CHECK(row.statistic <= 1e-6);
  }
}

TEST_CASE("a perturbed mean formula is caught") {
  auto options = small_options();
  options.perturb_mean = 0.1;
  const auto grid = dcrm::check_moment_grid(options);
  CHECK_FALSE(grid[0].passed);
  CHECK(grid[1].passed);
  const auto martingales = dcrm::check_martingales(options);
  CHECK_FALSE(martingales[0].passed);
}

TEST_CASE("reports are reproducible for a fixed seed") {
  auto options = small_options();
  options.grid_paths = 2000;
  const auto a = dcrm::check_moment_grid(options);
  const auto b = dcrm::check_moment_grid(options);
  CHECK(a[0].statistic == b[0].statistic);
  CHECK(a[1].statistic == b[1].statistic);
  options.threads = 3;
  const auto c = dcrm::check_moment_grid(options);
  CHECK(a[0].statistic == c[0].statistic);
}

TEST_CASE("scenario suite") {
  SUBCASE("Poisson config runs moment, martingale and m.g.f. checks") {
    auto config = dcrm::parse_scenario_config(R"(
horizon = 1
delta = 0.05
claim = { kind = "exponential", mean = 1 }
counting = { kind = "constant", rate = 1 }
[simulation]
paths = 50000
seed = 9
)",
                                              ".");
    auto report = dcrm::run_scenario_suite(config, {});
    CHECK(report.checks.size() == 5);
    CHECK(report.all_passed());
    dcrm::ValidationOptions bad;
    bad.perturb_mean = 0.1;
    report = dcrm::run_scenario_suite(config, bad);
    CHECK_FALSE(find(report, "S1").passed);
    CHECK_FALSE(find(report, "S3", "martingale_A").passed);
  }
  SUBCASE("PAYD config compares the premium with simulation") {
    auto config = dcrm::parse_scenario_config(R"(
horizon = 1
delta = 0.05
claim = { kind = "gamma", shape = 2, scale = 0.5 }
counting = { kind = "mileage_affine", base_rate = 0.2, per_mile = 0.01 }
mileage = { kind = "alternating_renewal", mean_drive = 0.2, mean_idle = 0.3, speed = 40 }
[simulation]
paths = 20000
)",
                                              ".");
    const auto report = dcrm::run_scenario_suite(config, {});
    CHECK(find(report, "S5").passed);
    CHECK(report.all_passed());
  }
}
