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

#ifndef DCRM_STATS_HPP
#define DCRM_STATS_HPP

#include <cstddef>
#include <span>

namespace dcrm {

/// A point estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double mean_se = 0.0;
  /// Standard error of the sample variance, from the fourth central moment:
  /// sqrt((m4 - variance^2 (n - 3) / (n - 1)) / n).
  double variance_se = 0.0;
};

/// Pairwise (cascade) summation; the result depends only on element order.
double pairwise_sum(std::span<const double> values);

/// Two-pass summary using pairwise sums. Requires at least one value; the
/// variance terms are zero when n < 2.
SampleSummary summarize(std::span<const double> values);

/// (estimate - target) / standard error; 0 when both sides agree exactly,
/// +-inf when they differ with a zero standard error.
double z_score(double estimate, double target, double standard_error);

}  // namespace dcrm

#endif  // DCRM_STATS_HPP
