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

#include "dcrm/payd.hpp"

#include <cmath>

#include "dcrm/error.hpp"
#include "parallel.hpp"

namespace dcrm {

void PaydPolicy::validate() const {
  intensity.validate();
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ValidationError("force of interest (delta) must be finite and >= 0");
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("horizon must be positive and finite");
  }
}

DcrmScenario PaydPolicy::scenario() const {
  return DcrmScenario{claim, CoxCounting{intensity, mileage}, delta, horizon};
}

namespace {

std::size_t path_count(const PaydPolicy& policy, std::size_t requested) {
  if (requested < 1) {
    throw ValidationError("number of outer paths must be >= 1");
  }
  return policy.mileage.deterministic() ? 1 : requested;
}

template <class F>
std::vector<double> over_paths(const PaydPolicy& policy, const PricingOptions& options, F&& f) {
  const std::size_t n = path_count(policy, options.n_outer);
  std::vector<double> out(n);
  detail::parallel_for(n, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng = RandomStream::derive(options.seed, i, kOuterDomain);
      out[i] = f(policy.mileage.realize(policy.horizon, rng));
    }
  });
  return out;
}

}  // namespace

std::vector<OuterPath> outer_paths(const PaydPolicy& policy, const PricingOptions& options) {
  policy.validate();
  const double mu1 = policy.claim.moment(1);
  const std::size_t n = path_count(policy, options.n_outer);
  std::vector<OuterPath> out(n);
  detail::parallel_for(n, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream rng = RandomStream::derive(options.seed, i, kOuterDomain);
      const MileagePath path = policy.mileage.realize(policy.horizon, rng);
      out[i].premium =
          mu1 * intensity_integral(policy.intensity.on_path(path), policy.delta, policy.horizon);
      out[i].mileage = path.cumulative(policy.horizon);
    }
  });
  return out;
}

PremiumQuote price_payd(const PaydPolicy& policy, const PricingOptions& options) {
  return quote_from_paths(outer_paths(policy, options));
}

PremiumQuote quote_from_paths(std::span<const OuterPath> paths) {
  std::vector<double> premiums(paths.size());
  std::vector<double> miles(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    premiums[i] = paths[i].premium;
    miles[i] = paths[i].mileage;
  }
  const SampleSummary premium = summarize(premiums);
  PremiumQuote quote;
  quote.net_premium = premium.mean;
  quote.standard_error = premium.mean_se;
  quote.expected_mileage = summarize(miles).mean;
  quote.per_expected_mile =
      quote.expected_mileage > 0.0 ? quote.net_premium / quote.expected_mileage : 0.0;
  quote.n_outer_paths = paths.size();
  return quote;
}

double conditional_mgf(const PaydPolicy& policy, const MileagePath& path, double u) {
  return mgf_nhpp(policy.claim, policy.intensity.on_path(path), policy.delta, policy.horizon, u);
}

Estimate mgf_cox(const PaydPolicy& policy, double u, const PricingOptions& options) {
  policy.validate();
  // Fail on the domain before spending time on paths.
  if (u > 0.0 && !(u < policy.claim.mgf_boundary())) {
    throw DomainError("m.g.f. argument outside the convergence region of " +
                      policy.claim.describe());
  }
  const std::vector<double> values =
      over_paths(policy, options, [&](const MileagePath& path) {
        return conditional_mgf(policy, path, u);
      });
  const SampleSummary summary = summarize(values);
  return {summary.mean, summary.mean_se};
}

CoxPremiumComparison validate_cox_premium(const PaydPolicy& policy, std::size_t n_outer,
                                          std::size_t n_full, std::uint64_t seed,
                                          unsigned threads) {
  const PremiumQuote quote = price_payd(policy, {n_outer, seed, threads});
  SimulationOptions sim;
  sim.n_paths = n_full;
  sim.seed = mix64(seed ^ kFullDomain);
  sim.threads = threads;
  const SimulationResult result = simulate_zt(policy.scenario(), sim);
  const SampleSummary z = summarize(result.z);

  CoxPremiumComparison out;
  out.premium = {quote.net_premium, quote.standard_error};
  out.simulated = {z.mean, z.mean_se};
  out.z_score = z_score(z.mean, quote.net_premium,
                        std::hypot(z.mean_se, quote.standard_error));
  return out;
}

}  // namespace dcrm
