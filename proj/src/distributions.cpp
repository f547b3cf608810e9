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

#include "dcrm/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dcrm/error.hpp"
#include "overloaded.hpp"

namespace dcrm {

using detail::overloaded;

ClaimDistribution ClaimDistribution::exponential(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw ValidationError("exponential claim mean must be positive and finite");
  }
  return ClaimDistribution(ExponentialClaims{mean});
}

ClaimDistribution ClaimDistribution::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ValidationError("gamma claim shape must be positive and finite");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ValidationError("gamma claim scale must be positive and finite");
  }
  return ClaimDistribution(GammaClaims{shape, scale});
}

ClaimDistribution ClaimDistribution::deterministic(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError("deterministic claim value must be nonnegative and finite");
  }
  return ClaimDistribution(DeterministicClaims{value});
}

double ClaimDistribution::sample(RandomStream& rng) const {
  return std::visit(
      overloaded{
          [&](const ExponentialClaims& e) { return rng.exponential(e.mean); },
          [&](const GammaClaims& g) { return rng.gamma(g.shape, g.scale); },
          [](const DeterministicClaims& d) { return d.value; },
      },
      kind_);
}

double ClaimDistribution::moment(int order) const {
  if (order != 1 && order != 2) {
    throw DomainError("claim moment order must be 1 or 2, got " + std::to_string(order));
  }
  return std::visit(
      overloaded{
          [&](const ExponentialClaims& e) {
            return order == 1 ? e.mean : 2.0 * e.mean * e.mean;
          },
          [&](const GammaClaims& g) {
            const double m = g.shape * g.scale;
            return order == 1 ? m : g.shape * (g.shape + 1.0) * g.scale * g.scale;
          },
          [&](const DeterministicClaims& d) {
            return order == 1 ? d.value : d.value * d.value;
          },
      },
      kind_);
}

double ClaimDistribution::mgf(double u) const {
  if (u == 0.0) {
    return 1.0;
  }
  if (!std::isfinite(u) || !(u < mgf_boundary())) {
    std::ostringstream msg;
    msg << "m.g.f. argument " << u << " outside the convergence region of " << describe();
    throw DomainError(msg.str());
  }
  return std::visit(
      overloaded{
          [&](const ExponentialClaims& e) { return 1.0 / (1.0 - e.mean * u); },
          [&](const GammaClaims& g) { return std::exp(-g.shape * std::log1p(-g.scale * u)); },
          [&](const DeterministicClaims& d) { return std::exp(d.value * u); },
      },
      kind_);
}

double ClaimDistribution::mgf_excess(double u) const {
  if (u == 0.0) {
    return 0.0;
  }
  mgf(u);  // domain check
  return std::visit(
      overloaded{
          [&](const ExponentialClaims& e) { return e.mean * u / (1.0 - e.mean * u); },
          [&](const GammaClaims& g) { return std::expm1(-g.shape * std::log1p(-g.scale * u)); },
          [&](const DeterministicClaims& d) { return std::expm1(d.value * u); },
      },
      kind_);
}

double ClaimDistribution::mgf_boundary() const noexcept {
  return std::visit(
      overloaded{
          [](const ExponentialClaims& e) { return 1.0 / e.mean; },
          [](const GammaClaims& g) { return 1.0 / g.scale; },
          [](const DeterministicClaims&) { return std::numeric_limits<double>::infinity(); },
      },
      kind_);
}

double ClaimDistribution::scale() const noexcept {
  return std::visit(
      overloaded{
          [](const ExponentialClaims& e) { return e.mean; },
          [](const GammaClaims& g) { return g.scale; },
          [](const DeterministicClaims& d) { return d.value; },
      },
      kind_);
}

std::string ClaimDistribution::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const ExponentialClaims& e) { out << "Exponential(mean=" << e.mean << ")"; },
                 [&](const GammaClaims& g) {
                   out << "Gamma(shape=" << g.shape << ", scale=" << g.scale << ")";
                 },
                 [&](const DeterministicClaims& d) { out << "Deterministic(" << d.value << ")"; },
             },
             kind_);
  return out.str();
}

}  // namespace dcrm
