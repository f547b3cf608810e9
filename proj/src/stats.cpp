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

#include "dcrm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dcrm/error.hpp"

namespace dcrm {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 128;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) {
      s += v;
    }
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleSummary summarize(std::span<const double> values) {
  if (values.empty()) {
    throw ValidationError("cannot summarize an empty sample");
  }
  SampleSummary out;
  out.n = values.size();
  const double n = static_cast<double>(out.n);
  out.mean = pairwise_sum(values) / n;
  if (out.n < 2) {
    return out;
  }
  std::vector<double> sq(values.size());
  std::vector<double> quart(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
    quart[i] = sq[i] * sq[i];
  }
  const double m2 = pairwise_sum(sq) / n;
  const double m4 = pairwise_sum(quart) / n;
  out.variance = m2 * n / (n - 1.0);
  out.mean_se = std::sqrt(out.variance / n);
  const double var_of_var = (m4 - out.variance * out.variance * (n - 3.0) / (n - 1.0)) / n;
  out.variance_se = std::sqrt(std::max(var_of_var, 0.0));
  return out;
}

double z_score(double estimate, double target, double standard_error) {
  const double diff = estimate - target;
  if (diff == 0.0) {
    return 0.0;
  }
  if (standard_error == 0.0) {
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / standard_error;
}

}  // namespace dcrm
