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

#ifndef DCRM_PAYD_HPP
#define DCRM_PAYD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dcrm/dcrm.hpp"
#include "dcrm/distributions.hpp"
#include "dcrm/intensity.hpp"
#include "dcrm/mileage.hpp"
#include "dcrm/stats.hpp"

namespace dcrm {

/// Pay-as-you-drive policy: claim intensity driven by the insured's mileage.
struct PaydPolicy {
  ClaimDistribution claim;
  MileageAffine intensity;
  MileageModel mileage;
  double delta = 0.0;
  double horizon = 1.0;

  void validate() const;

  /// The same risk as a discounted collective risk scenario with Cox counting.
  DcrmScenario scenario() const;
};

struct PremiumQuote {
  double net_premium = 0.0;
  double standard_error = 0.0;  // 0 for deterministic mileage
  /// net_premium / expected total mileage; 0 when no mileage is expected.
  double per_expected_mile = 0.0;
  double expected_mileage = 0.0;
  std::size_t n_outer_paths = 0;
};

/// Realized contribution of one mileage path.
struct OuterPath {
  double premium;  // mu1 * int lambda(s, d(s)) e^{-delta s} ds on the path
  double mileage;  // d(horizon)
};

struct PricingOptions {
  std::size_t n_outer = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// Per-path premiums, one entry for deterministic mileage models and
/// `n_outer` otherwise. Path i uses RandomStream::derive(seed, i, kOuterDomain).
std::vector<OuterPath> outer_paths(const PaydPolicy& policy, const PricingOptions& options);

/// Aggregates realized outer paths into a quote.
PremiumQuote quote_from_paths(std::span<const OuterPath> paths);

/// Net premium E[Z_t] = mu1 E[int_0^t lambda(s, d(s)) e^{-delta s} ds]:
/// exact segment integrals inside each mileage path, Monte Carlo over paths.
PremiumQuote price_payd(const PaydPolicy& policy, const PricingOptions& options);

/// The inner value of the Cox m.g.f. for one fixed mileage path,
/// exp(-int lambda(s, d(s)) (1 - M_X(u e^{-delta s})) ds).
double conditional_mgf(const PaydPolicy& policy, const MileagePath& path, double u);

/// M_Z(u) averaged over mileage paths; one path with zero standard error
/// for deterministic mileage.
Estimate mgf_cox(const PaydPolicy& policy, double u, const PricingOptions& options);

struct CoxPremiumComparison {
  Estimate premium;    // outer-path estimator
  Estimate simulated;  // end-to-end sample mean of Z_t
  double z_score = 0.0;
};

/// Cross-checks price_payd against full Cox simulation of discounted losses.
/// The two estimators use disjoint random streams.
CoxPremiumComparison validate_cox_premium(const PaydPolicy& policy, std::size_t n_outer,
                                          std::size_t n_full, std::uint64_t seed,
                                          unsigned threads = 1);

inline constexpr std::uint64_t kOuterDomain = 0x6F75746572ULL;  // "outer"
inline constexpr std::uint64_t kFullDomain = 0x66756C6CULL;     // "full"

}  // namespace dcrm

#endif  // DCRM_PAYD_HPP
