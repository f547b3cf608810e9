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

#ifndef DCRM_DCRM_HPP
#define DCRM_DCRM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dcrm/distributions.hpp"
#include "dcrm/intensity.hpp"
#include "dcrm/mileage.hpp"
#include "dcrm/stats.hpp"

namespace dcrm {

/// Counting process driven by a mileage model (Cox / doubly stochastic).
struct CoxCounting {
  MileageAffine intensity;
  MileageModel mileage;
};

using CountingModel = std::variant<Intensity, CoxCounting>;

/// Discounted collective risk model on (0, horizon]:
/// Z = sum_{i <= N(horizon)} X_i exp(-delta W_i), claims independent of N.
struct DcrmScenario {
  ClaimDistribution claim;
  CountingModel counting;
  double delta = 0.0;
  double horizon = 1.0;

  void validate() const;

  /// Set only for a homogeneous Poisson counting process.
  std::optional<double> constant_rate() const;

  /// The intensity when it is not random: a deterministic lambda(t), or a
  /// Cox model whose mileage model is deterministic.
  std::optional<Intensity> deterministic_intensity() const;
};

struct SimulationOptions {
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Keep arrival times and claim sizes of every path.
  bool full_trace = false;
};

struct PathTrace {
  std::vector<double> arrival_times;
  std::vector<double> claims;
  /// Cox paths only: realized d(horizon) and the realized discounted
  /// exposure, the integral of lambda(s, d(s)) exp(-delta s) over the path.
  double mileage = 0.0;
  double exposure = 0.0;
};

struct SimulationResult {
  std::vector<double> z;
  std::vector<std::size_t> counts;
  std::uint64_t seed = 0;
  std::size_t n_paths = 0;
  double delta = 0.0;
  double horizon = 0.0;
  std::vector<PathTrace> traces;  // empty unless full_trace

  bool has_trace() const noexcept { return !traces.empty(); }

  /// Z_s for one path, s in (0, horizon]. Needs the trace unless s equals
  /// the horizon.
  double z_at(std::size_t path, double s) const;
};

/// Monte Carlo paths of Z. Path i draws from RandomStream::derive(seed, i)
/// and results are stored by index, so output is identical for any
/// `threads` value.
SimulationResult simulate_zt(const DcrmScenario& scenario, const SimulationOptions& options);

/// E[Z_t] = mu1 lambda (1 - exp(-delta t)) / delta; mu1 lambda t at delta = 0.
double analytic_mean(double mu1, double lambda, double delta, double t);

/// Var[Z_t] = mu2 lambda (1 - exp(-2 delta t)) / (2 delta); mu2 lambda t at
/// delta = 0.
double analytic_variance(double mu2, double lambda, double delta, double t);

/// t -> inf limit of the mean: the single premium of a perpetuity paying
/// mu1 lambda continuously. Requires delta > 0.
double perpetuity_mean(double mu1, double lambda, double delta);

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of Z for any scenario with a deterministic intensity:
/// mu1 * int lambda e^{-delta s} and mu2 * int lambda e^{-2 delta s}.
std::optional<Moments> analytic_moments(const DcrmScenario& scenario);

/// log M_Z(u) = int_0^t lambda(s) (M_X(u e^{-delta s}) - 1) ds, by
/// adaptive quadrature per segment of lambda.
double log_mgf_nhpp(const ClaimDistribution& claim, const Intensity& intensity, double delta,
                    double t, double u);

/// M_Z(u) = exp(-int_0^t lambda(s) (1 - M_X(u e^{-delta s})) ds).
double mgf_nhpp(const ClaimDistribution& claim, const Intensity& intensity, double delta,
                double t, double u);

/// Closed form for exponential claims (mean beta) and constant lambda:
/// ((1 - beta u e^{-delta t}) / (1 - beta u))^{lambda / delta}. delta = 0 is
/// routed to mgf_exponential_undiscounted.
double mgf_exponential_closed(double beta, double lambda, double delta, double t, double u);

/// delta -> 0 limit: exp(lambda t u beta / (1 - u beta)).
double mgf_exponential_undiscounted(double beta, double lambda, double t, double u);

/// t -> inf limit: (1 - u beta)^{-lambda / delta}. Requires delta > 0.
double mgf_exponential_perpetuity(double beta, double lambda, double delta, double u);

struct ResidualPoint {
  double time;
  double mean;
  double standard_error;
};

enum class Residual {
  /// A_s = Z_s - E[Z_s]
  Centered,
  /// B_s = (Z_s - E[Z_s])^2 - Var[Z_s]
  Squared,
};

/// Sample mean and standard error of a martingale residual at each grid
/// time. The scenario must have a constant rate. `mean_scale` multiplies
/// the analytic mean; it exists to demonstrate that the checks detect a
/// wrong formula and is 1 otherwise.
std::vector<ResidualPoint> martingale_residuals(const SimulationResult& result,
                                                const DcrmScenario& scenario,
                                                std::span<const double> grid, Residual kind,
                                                double mean_scale = 1.0);

inline std::vector<ResidualPoint> martingale_residual_a(const SimulationResult& result,
                                                        const DcrmScenario& scenario,
                                                        std::span<const double> grid) {
  return martingale_residuals(result, scenario, grid, Residual::Centered);
}

inline std::vector<ResidualPoint> martingale_residual_b(const SimulationResult& result,
                                                        const DcrmScenario& scenario,
                                                        std::span<const double> grid) {
  return martingale_residuals(result, scenario, grid, Residual::Squared);
}

/// Sample mean of exp(u Z) with its standard error. Positive u is limited
/// to half the claim law's m.g.f. boundary, where the estimator still has
/// usable variance.
Estimate estimate_mgf_empirical(const SimulationResult& result, const ClaimDistribution& claim,
                                double u);

}  // namespace dcrm

#endif  // DCRM_DCRM_HPP
