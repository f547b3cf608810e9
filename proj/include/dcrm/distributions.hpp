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

#ifndef DCRM_DISTRIBUTIONS_HPP
#define DCRM_DISTRIBUTIONS_HPP

#include <string>
#include <variant>

#include "dcrm/random_stream.hpp"

namespace dcrm {

struct ExponentialClaims {
  double mean;
};

struct GammaClaims {
  double shape;
  double scale;
};

struct DeterministicClaims {
  double value;
};

/// Claim-size law X with exact raw moments and moment generating function.
///
/// Immutable once built; the factory functions reject invalid parameters
/// with ValidationError.
class ClaimDistribution {
 public:
  using Kind = std::variant<ExponentialClaims, GammaClaims, DeterministicClaims>;

  static ClaimDistribution exponential(double mean);
  static ClaimDistribution gamma(double shape, double scale);
  static ClaimDistribution deterministic(double value);

  const Kind& kind() const noexcept { return kind_; }

  double sample(RandomStream& rng) const;

  /// Exact raw moment E[X^order]; order must be 1 or 2.
  double moment(int order) const;

  /// M_X(u) = E[exp(u X)]. Throws DomainError at or beyond the boundary of
  /// the convergence region.
  double mgf(double u) const;

  /// M_X(u) - 1 without cancellation near u = 0.
  double mgf_excess(double u) const;

  /// Supremum of the convergence region (+inf for the degenerate law).
  double mgf_boundary() const noexcept;

  /// Scale used by guards that are expressed in units of the law's size
  /// (mean for exponential, scale for gamma, value for deterministic).
  double scale() const noexcept;

  std::string describe() const;

 private:
  explicit ClaimDistribution(Kind kind) : kind_(kind) {}

  Kind kind_;
};

}  // namespace dcrm

#endif  // DCRM_DISTRIBUTIONS_HPP
