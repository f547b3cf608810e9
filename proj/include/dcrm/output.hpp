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

#ifndef DCRM_OUTPUT_HPP
#define DCRM_OUTPUT_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dcrm/dcrm.hpp"
#include "dcrm/payd.hpp"

namespace dcrm {

/// Ten significant digits, "%.10g".
std::string format_number(double value);

/// `path,z,count`, one row per path.
void write_paths_csv(std::ostream& out, const SimulationResult& result);

/// `path,time,claim`, one row per arrival (needs a full trace).
void write_arrivals_csv(std::ostream& out, const SimulationResult& result);

/// `stat,value,stderr`: sample mean/variance of Z and of the claim count,
/// plus analytic mean/variance when `analytic` is set (stderr 0).
void write_summary_csv(std::ostream& out, const SimulationResult& result,
                       const std::optional<Moments>& analytic);

/// `net_premium,stderr,per_expected_mile,n_outer` and one data row.
void write_quote_csv(std::ostream& out, const PremiumQuote& quote);

/// `path,premium,mileage` for the realized outer paths.
void write_outer_paths_csv(std::ostream& out, std::span<const OuterPath> paths);

std::string format_quote_text(const PremiumQuote& quote, const PaydPolicy& policy);

/// Writes every file or none: contents go to temporaries first and are
/// renamed into place only after all of them were written. Creates the
/// directory if needed. Throws IoError.
void write_files_atomically(const std::filesystem::path& directory,
                            const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace dcrm

#endif  // DCRM_OUTPUT_HPP
