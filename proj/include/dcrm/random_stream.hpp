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

#ifndef DCRM_RANDOM_STREAM_HPP
#define DCRM_RANDOM_STREAM_HPP

#include <cstdint>
#include <random>

namespace dcrm {

/// A caller-owned source of randomness.
///
/// Streams used by the parallel simulators are derived from a master seed
/// and a path index, so every path sees the same numbers no matter which
/// worker generates it.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Independent stream for `(seed, index)`; `domain` separates families of
  /// streams that share a master seed (e.g. outer mileage paths vs. full
  /// simulation paths).
  static RandomStream derive(std::uint64_t seed, std::uint64_t index,
                             std::uint64_t domain = 0);

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Exponential with the given mean (inverse-CDF).
  double exponential(double mean);

  /// Gamma with shape `k` and scale `theta`.
  double gamma(double k, double theta);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace dcrm

#endif  // DCRM_RANDOM_STREAM_HPP
