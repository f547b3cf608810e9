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

#ifndef DCRM_VALIDATION_HPP
#define DCRM_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcrm/config.hpp"

namespace dcrm {

/// One statistical or numerical check: passes when `statistic <= threshold`
/// (and any extra condition in `detail` held).
struct CheckResult {
  std::string criterion;  // acceptance criterion number, e.g. "1", "5b"
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
  /// Fixed-width pass/fail table, one line per check.
  std::string format_table() const;
};

struct ValidationOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Fault injection: every analytic mean used as a target is multiplied by
  /// (1 + perturb_mean). Zero in normal runs.
  double perturb_mean = 0.0;

  std::size_t grid_paths = 100000;       // mean/variance grid
  std::size_t mgf_paths = 1000000;       // empirical m.g.f.
  std::size_t martingale_paths = 100000;
  std::size_t cox_paths = 100000;        // full Cox simulations
  std::size_t outer_paths = 10000;       // mileage paths for the premium estimator
};

// Built-in suite, grouped the way the acceptance criteria are.

/// Criteria 1 and 2: Monte Carlo mean and variance of Z against the closed
/// forms on lambda x delta x t = {0.5,1,2} x {0.01,0.1,1} x {0.5,1,5}.
std::vector<CheckResult> check_moment_grid(const ValidationOptions& options);

/// Criterion 3: quadrature m.g.f. vs the exponential closed form.
std::vector<CheckResult> check_mgf_quadrature(const ValidationOptions& options);

/// Criterion 4: empirical m.g.f. at (beta, lambda, delta, t, u) = (1, 1, 1, 1, 0.4).
std::vector<CheckResult> check_empirical_mgf(const ValidationOptions& options);

/// Criterion 5: delta -> 0 and t -> inf limits.
std::vector<CheckResult> check_limits(const ValidationOptions& options);

/// Criterion 6: zero-mean martingale residuals A and B.
std::vector<CheckResult> check_martingales(const ValidationOptions& options);

/// Criterion 7: Cox model reduces to the deterministic-intensity results.
std::vector<CheckResult> check_cox_reduction(const ValidationOptions& options);

/// Criterion 8: PAYD premium estimator against end-to-end Cox simulation.
std::vector<CheckResult> check_payd_premium(const ValidationOptions& options);

ValidationReport run_builtin_suite(const ValidationOptions& options);

/// Checks applicable to one configured scenario: moments against analytic
/// values where those exist, martingale residuals for constant rates,
/// the empirical m.g.f. for exponential claims with a constant rate, and
/// the premium cross-check for mileage-driven policies.
ValidationReport run_scenario_suite(const ScenarioConfig& config,
                                    const ValidationOptions& options);

}  // namespace dcrm

#endif  // DCRM_VALIDATION_HPP
