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

#ifndef DCRM_CONFIG_HPP
#define DCRM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dcrm/dcrm.hpp"
#include "dcrm/error.hpp"
#include "dcrm/payd.hpp"

namespace dcrm {

/// A config value that violates a constraint; `field()` is the dotted key
/// (e.g. "claim.mean", "simulation.paths").
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string field, const std::string& what)
      : ValidationError(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SimulationSection {
  std::size_t paths = 10000;
  std::uint64_t seed = 1;
  bool full_trace = false;
};

/// Scenario file contents, already validated.
///
///   delta = 0.05
///   horizon = 1.0
///   claim = { kind = "exponential", mean = 1.0 }
///   counting = { kind = "mileage_affine", base_rate = 0.1, per_mile = 0.005 }
///   mileage = { kind = "alternating_renewal", mean_drive = 1, mean_idle = 1, speed = 30 }
///
///   [simulation]
///   paths = 100000
///   seed = 42
///   full_trace = false
struct ScenarioConfig {
  ClaimDistribution claim;
  std::variant<Intensity, MileageAffine> counting;
  std::optional<MileageModel> mileage;
  double delta = 0.0;
  double horizon = 1.0;
  SimulationSection simulation;

  /// Throws ConfigError("mileage", ...) when the counting model needs a
  /// mileage model that is absent.
  DcrmScenario scenario() const;

  /// Requires a mileage_affine counting record and a mileage section.
  PaydPolicy policy() const;
};

/// `base_dir` resolves relative trip-log paths. Syntax problems throw
/// ParseError; constraint violations throw ConfigError.
ScenarioConfig parse_scenario_config(std::string_view text,
                                     const std::filesystem::path& base_dir);

/// Throws IoError if the file cannot be read.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

}  // namespace dcrm

#endif  // DCRM_CONFIG_HPP
