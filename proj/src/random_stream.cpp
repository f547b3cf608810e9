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

#include "dcrm/random_stream.hpp"

#include <cmath>

namespace dcrm {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(mix64(seed)) {}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t index,
                                  std::uint64_t domain) {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ (domain * 0xD6E8FEB86659FD93ULL));
  key = mix64(key ^ index);
  return RandomStream(key);
}

double RandomStream::uniform() {
  // 53 random bits, shifted by half an ulp so 0 and 1 are excluded.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential(double mean) { return -mean * std::log(uniform()); }

double RandomStream::gamma(double k, double theta) {
  std::gamma_distribution<double> dist(k, theta);
  return dist(engine_);
}

}  // namespace dcrm
