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

#ifndef DCRM_PROCESSES_HPP
#define DCRM_PROCESSES_HPP

#include <span>
#include <vector>

#include "dcrm/intensity.hpp"
#include "dcrm/mileage.hpp"
#include "dcrm/random_stream.hpp"

namespace dcrm {

/// Claim arrival times W_1 < ... < W_N in (0, horizon].
class ArrivalPath {
 public:
  ArrivalPath(std::vector<double> times, double horizon);

  std::span<const double> times() const noexcept { return times_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  /// N(t) = #{i : W_i <= t}.
  std::size_t count(double t) const;

 private:
  std::vector<double> times_;
  double horizon_;
};

/// Homogeneous Poisson arrivals from exponential inter-arrival gaps.
ArrivalPath simulate_homogeneous(double rate, double horizon, RandomStream& rng);

/// Non-homogeneous Poisson arrivals by thinning a rate-`rate_bound` stream.
/// Throws ValidationError if a candidate point sees lambda > rate_bound.
ArrivalPath simulate_nhpp(const Intensity& intensity, double horizon, double rate_bound,
                          RandomStream& rng);

/// Same, with the bound taken from `intensity.upper_bound(horizon)`.
ArrivalPath simulate_nhpp(const Intensity& intensity, double horizon, RandomStream& rng);

struct CoxRealization {
  MileagePath mileage;
  ArrivalPath arrivals;
};

/// Two-step randomization: realize d(t), then draw NHPP arrivals with
/// lambda(s) = base_rate + per_mile * d'(s) on that path.
CoxRealization simulate_cox(const MileageAffine& intensity, const MileageModel& mileage,
                            double horizon, RandomStream& rng);

}  // namespace dcrm

#endif  // DCRM_PROCESSES_HPP
