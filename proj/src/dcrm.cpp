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

#include "dcrm/dcrm.hpp"

#include <cmath>
#include <sstream>

#include "dcrm/error.hpp"
#include "dcrm/processes.hpp"
#include "overloaded.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace dcrm {

using detail::overloaded;

namespace {

void require_nonneg(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be finite and >= 0");
  }
}

void require_in_domain(const ClaimDistribution& claim, double u) {
  // u e^{-delta s} lies between u e^{-delta t} and u, so checking s = 0
  // covers the whole interval for delta >= 0.
  if (u > 0.0 && !(u < claim.mgf_boundary())) {
    std::ostringstream msg;
    msg << "m.g.f. argument u=" << u << " outside the convergence region of "
        << claim.describe();
    throw DomainError(msg.str());
  }
}

}  // namespace

void DcrmScenario::validate() const {
  require_nonneg(delta, "force of interest (delta)");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("horizon must be positive and finite");
  }
  if (const auto* cox = std::get_if<CoxCounting>(&counting)) {
    cox->intensity.validate();
  }
}

std::optional<double> DcrmScenario::constant_rate() const {
  if (const auto* i = std::get_if<Intensity>(&counting)) {
    return i->constant_rate();
  }
  return std::nullopt;
}

std::optional<Intensity> DcrmScenario::deterministic_intensity() const {
  return std::visit(overloaded{
                        [](const Intensity& i) -> std::optional<Intensity> { return i; },
                        [&](const CoxCounting& c) -> std::optional<Intensity> {
                          if (!c.mileage.deterministic()) {
                            return std::nullopt;
                          }
                          RandomStream unused(0);
                          return c.intensity.on_path(c.mileage.realize(horizon, unused));
                        },
                    },
                    counting);
}

double SimulationResult::z_at(std::size_t path, double s) const {
  if (path >= z.size()) {
    throw DomainError("path index out of range");
  }
  if (!(s > 0.0) || s > horizon) {
    throw DomainError("time " + std::to_string(s) + " outside (0, horizon]");
  }
  if (s == horizon && traces.empty()) {
    return z[path];
  }
  if (traces.empty()) {
    throw ValidationError("intermediate values of Z need a full-trace simulation");
  }
  const PathTrace& trace = traces[path];
  double total = 0.0;
  for (std::size_t i = 0; i < trace.arrival_times.size() && trace.arrival_times[i] <= s; ++i) {
    total += trace.claims[i] * std::exp(-delta * trace.arrival_times[i]);
  }
  return total;
}

SimulationResult simulate_zt(const DcrmScenario& scenario, const SimulationOptions& options) {
  scenario.validate();
  if (options.n_paths < 1) {
    throw ValidationError("number of paths must be >= 1");
  }
  SimulationResult result;
  result.seed = options.seed;
  result.n_paths = options.n_paths;
  result.delta = scenario.delta;
  result.horizon = scenario.horizon;
  result.z.assign(options.n_paths, 0.0);
  result.counts.assign(options.n_paths, 0);
  if (options.full_trace) {
    result.traces.resize(options.n_paths);
  }

  const double delta = scenario.delta;
  const double horizon = scenario.horizon;
  const auto* deterministic = std::get_if<Intensity>(&scenario.counting);
  const auto* cox = std::get_if<CoxCounting>(&scenario.counting);
  const double bound = deterministic ? deterministic->upper_bound(horizon) : 0.0;

  detail::parallel_for(options.n_paths, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      RandomStream rng = RandomStream::derive(options.seed, p);
      std::optional<ArrivalPath> arrivals;
      PathTrace* trace = options.full_trace ? &result.traces[p] : nullptr;
      if (deterministic) {
        arrivals = bound > 0.0 ? simulate_nhpp(*deterministic, horizon, bound, rng)
                               : ArrivalPath({}, horizon);
      } else {
        CoxRealization realized = simulate_cox(cox->intensity, cox->mileage, horizon, rng);
        if (trace) {
          trace->mileage = realized.mileage.cumulative(horizon);
          trace->exposure =
              intensity_integral(cox->intensity.on_path(realized.mileage), delta, horizon);
        }
        arrivals = std::move(realized.arrivals);
      }
      double z = 0.0;
      for (double w : arrivals->times()) {
        const double x = scenario.claim.sample(rng);
        z += x * std::exp(-delta * w);
        if (trace) {
          trace->arrival_times.push_back(w);
          trace->claims.push_back(x);
        }
      }
      result.z[p] = z;
      result.counts[p] = arrivals->size();
    }
  });
  return result;
}

double analytic_mean(double mu1, double lambda, double delta, double t) {
  require_nonneg(lambda, "lambda");
  require_nonneg(delta, "delta");
  require_nonneg(t, "t");
  return mu1 * lambda * discounted_length(0.0, t, delta);
}

double analytic_variance(double mu2, double lambda, double delta, double t) {
  require_nonneg(lambda, "lambda");
  require_nonneg(delta, "delta");
  require_nonneg(t, "t");
  return mu2 * lambda * discounted_length(0.0, t, 2.0 * delta);
}

double perpetuity_mean(double mu1, double lambda, double delta) {
  if (!(delta > 0.0)) {
    throw DomainError("perpetuity limit needs delta > 0");
  }
  return mu1 * lambda / delta;
}

std::optional<Moments> analytic_moments(const DcrmScenario& scenario) {
  scenario.validate();
  const double mu1 = scenario.claim.moment(1);
  const double mu2 = scenario.claim.moment(2);
  if (const auto rate = scenario.constant_rate()) {
    return Moments{analytic_mean(mu1, *rate, scenario.delta, scenario.horizon),
                   analytic_variance(mu2, *rate, scenario.delta, scenario.horizon)};
  }
  const auto intensity = scenario.deterministic_intensity();
  if (!intensity) {
    return std::nullopt;
  }
  return Moments{mu1 * intensity_integral(*intensity, scenario.delta, scenario.horizon),
                 mu2 * intensity_integral(*intensity, 2.0 * scenario.delta, scenario.horizon)};
}

double log_mgf_nhpp(const ClaimDistribution& claim, const Intensity& intensity, double delta,
                    double t, double u) {
  require_nonneg(delta, "delta");
  require_nonneg(t, "t");
  require_in_domain(claim, u);
  if (u == 0.0) {
    return 0.0;
  }
  double total = 0.0;
  for (const auto& seg : intensity.segments(t)) {
    if (seg.rate) {
      if (*seg.rate == 0.0) {
        continue;
      }
      total += *seg.rate * detail::integrate(
                               [&](double s) { return claim.mgf_excess(u * std::exp(-delta * s)); },
                               seg.begin, seg.end);
    } else {
      total += detail::integrate(
          [&](double s) { return intensity(s) * claim.mgf_excess(u * std::exp(-delta * s)); },
          seg.begin, seg.end);
    }
  }
  return total;
}

double mgf_nhpp(const ClaimDistribution& claim, const Intensity& intensity, double delta,
                double t, double u) {
  return std::exp(log_mgf_nhpp(claim, intensity, delta, t, u));
}

namespace {

void require_exponential_domain(double beta, double lambda, double u) {
  if (!(beta > 0.0)) {
    throw ValidationError("beta must be > 0");
  }
  require_nonneg(lambda, "lambda");
  if (!(beta * u < 1.0)) {
    throw DomainError("u must be < 1/beta");
  }
}

}  // namespace

double mgf_exponential_closed(double beta, double lambda, double delta, double t, double u) {
  require_exponential_domain(beta, lambda, u);
  require_nonneg(delta, "delta");
  require_nonneg(t, "t");
  if (delta == 0.0) {
    return mgf_exponential_undiscounted(beta, lambda, t, u);
  }
  // (1 - bu e^{-dt}) / (1 - bu) = 1 + bu (1 - e^{-dt}) / (1 - bu)
  const double bu = beta * u;
  const double ratio_minus_one = bu * -std::expm1(-delta * t) / (1.0 - bu);
  return std::exp(lambda / delta * std::log1p(ratio_minus_one));
}

double mgf_exponential_undiscounted(double beta, double lambda, double t, double u) {
  require_exponential_domain(beta, lambda, u);
  require_nonneg(t, "t");
  return std::exp(lambda * t * u * beta / (1.0 - u * beta));
}

double mgf_exponential_perpetuity(double beta, double lambda, double delta, double u) {
  require_exponential_domain(beta, lambda, u);
  if (!(delta > 0.0)) {
    throw DomainError("perpetuity limit needs delta > 0");
  }
  return std::exp(-lambda / delta * std::log1p(-u * beta));
}

std::vector<ResidualPoint> martingale_residuals(const SimulationResult& result,
                                                const DcrmScenario& scenario,
                                                std::span<const double> grid, Residual kind,
                                                double mean_scale) {
  const auto rate = scenario.constant_rate();
  if (!rate) {
    throw ValidationError("martingale residuals need a constant claim rate");
  }
  const double mu1 = scenario.claim.moment(1);
  const double mu2 = scenario.claim.moment(2);
  std::vector<ResidualPoint> out;
  out.reserve(grid.size());
  std::vector<double> values(result.z.size());
  for (double s : grid) {
    if (!(s > 0.0) || s > scenario.horizon) {
      throw DomainError("grid time " + std::to_string(s) + " outside (0, horizon]");
    }
    const double mean = mean_scale * analytic_mean(mu1, *rate, scenario.delta, s);
    const double variance = analytic_variance(mu2, *rate, scenario.delta, s);
    for (std::size_t p = 0; p < values.size(); ++p) {
      const double centered = result.z_at(p, s) - mean;
      values[p] = kind == Residual::Centered ? centered : centered * centered - variance;
    }
    const SampleSummary summary = summarize(values);
    out.push_back({s, summary.mean, summary.mean_se});
  }
  return out;
}

Estimate estimate_mgf_empirical(const SimulationResult& result, const ClaimDistribution& claim,
                                double u) {
  if (!std::isfinite(u) || u > 0.5 * claim.mgf_boundary()) {
    std::ostringstream msg;
    msg << "u=" << u << " outside the safe region u <= " << 0.5 * claim.mgf_boundary()
        << " for empirical m.g.f. estimation";
    throw DomainError(msg.str());
  }
  std::vector<double> values(result.z.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    values[p] = std::exp(u * result.z[p]);
  }
  const SampleSummary summary = summarize(values);
  return {summary.mean, summary.mean_se};
}

}  // namespace dcrm
