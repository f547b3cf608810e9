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

#include "dcrm/processes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcrm/error.hpp"

namespace dcrm {

namespace {

void require_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("horizon must be positive and finite");
  }
}

}  // namespace

ArrivalPath::ArrivalPath(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0.0) || times_[i] > horizon_ || (i > 0 && !(times_[i] > times_[i - 1]))) {
      throw ValidationError("arrival times must be strictly increasing in (0, horizon]");
    }
  }
}

std::size_t ArrivalPath::count(double t) const {
  return static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) -
                                  times_.begin());
}

ArrivalPath simulate_homogeneous(double rate, double horizon, RandomStream& rng) {
  require_horizon(horizon);
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ValidationError("rate must be finite and >= 0");
  }
  std::vector<double> times;
  if (rate > 0.0) {
    const double mean_gap = 1.0 / rate;
    double t = rng.exponential(mean_gap);
    while (t <= horizon) {
      if (times.empty() || t > times.back()) {
        times.push_back(t);
      }
      t += rng.exponential(mean_gap);
    }
  }
  return ArrivalPath(std::move(times), horizon);
}

ArrivalPath simulate_nhpp(const Intensity& intensity, double horizon, double rate_bound,
                          RandomStream& rng) {
  require_horizon(horizon);
  if (!(rate_bound > 0.0) || !std::isfinite(rate_bound)) {
    throw ValidationError("thinning bound must be positive and finite");
  }
  const double mean_gap = 1.0 / rate_bound;
  // Tolerate rounding in bounds computed from the same rates.
  const double limit = rate_bound * (1.0 + 1e-12);
  std::vector<double> times;
  double t = rng.exponential(mean_gap);
  while (t <= horizon) {
    const double rate = intensity(t);
    if (rate > limit || !(rate >= 0.0)) {
      std::ostringstream msg;
      msg << "intensity " << rate << " at t=" << t << " violates thinning bound " << rate_bound;
      throw ValidationError(msg.str());
    }
    const double u = rng.uniform();
    if (u * rate_bound < rate && (times.empty() || t > times.back())) {
      times.push_back(t);
    }
    t += rng.exponential(mean_gap);
  }
  return ArrivalPath(std::move(times), horizon);
}

ArrivalPath simulate_nhpp(const Intensity& intensity, double horizon, RandomStream& rng) {
  require_horizon(horizon);
  const double bound = intensity.upper_bound(horizon);
  if (bound == 0.0) {
    return ArrivalPath({}, horizon);
  }
  return simulate_nhpp(intensity, horizon, bound, rng);
}

CoxRealization simulate_cox(const MileageAffine& intensity, const MileageModel& mileage,
                            double horizon, RandomStream& rng) {
  intensity.validate();
  MileagePath path = mileage.realize(horizon, rng);
  const Intensity conditional = intensity.on_path(path);
  ArrivalPath arrivals = simulate_nhpp(conditional, horizon, rng);
  return {std::move(path), std::move(arrivals)};
}

}  // namespace dcrm
