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


#include <cmath>
#include <random>
#include <vector>

#include "dcrm/dcrm.hpp"
#include "dcrm/error.hpp"
#include "dcrm/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using dcrm::ClaimDistribution;
using dcrm::DcrmScenario;
using dcrm::Intensity;
using dcrm::SimulationOptions;

namespace {

DcrmScenario poisson(double rate, ClaimDistribution claim, double delta, double horizon) {
  return DcrmScenario{claim, Intensity::constant(rate), delta, horizon};
}

// Independent compound-Poisson sampler: exponential gaps and exponential
// claims from the standard library, discounted one by one.
std::vector<double> reference_zt(double rate, double beta, double delta, double horizon,
                                 std::size_t n, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::exponential_distribution<double> gap(rate);
  std::exponential_distribution<double> claim(1.0 / beta);
  std::vector<double> out(n);
  for (auto& z : out) {
    double t = gap(engine);
    double sum = 0.0;
    while (t <= horizon) {
      sum += claim(engine) * std::exp(-delta * t);
      t += gap(engine);
    }
    z = sum;
  }
  return out;
}

// Reference exponential-claim m.g.f.: Romberg quadrature of the
// exponent with M_X(v) = 1 / (1 - beta v).
double reference_mgf(double beta, double rate, double delta, double t, double u) {
  const double exponent = oracle::romberg(
      [&](double s) {
        const double v = u * std::exp(-delta * s);
        return rate * (1.0 / (1.0 - beta * v) - 1.0);
      },
      0.0, t, 20000);
  return std::exp(exponent);
}

}  // namespace

TEST_CASE("simulate_zt") {
  SUBCASE("zero intensity gives Z = 0 on every path") {
    const auto r = dcrm::simulate_zt(poisson(0.0, ClaimDistribution::exponential(1.0), 0.05, 1.0),
                                     {1000, 3, 1, false});
    for (std::size_t p = 0; p < r.n_paths; ++p) {
      CHECK(r.z[p] == 0.0);
      CHECK(r.counts[p] == 0);
    }
  }
  SUBCASE("paths without arrivals are exactly zero and all values are nonnegative") {
    const auto r = dcrm::simulate_zt(poisson(0.7, ClaimDistribution::gamma(2.0, 1.0), 0.1, 1.0),
                                     {20000, 5, 1, false});
    std::size_t empty = 0;
    for (std::size_t p = 0; p < r.n_paths; ++p) {
      CHECK(r.z[p] >= 0.0);
      if (r.counts[p] == 0) {
        ++empty;
        CHECK(r.z[p] == 0.0);
      }
    }
    CHECK(empty > 0);
  }
  SUBCASE("heavy discounting drives the mean to zero") {
    const auto r = dcrm::simulate_zt(poisson(1.0, ClaimDistribution::exponential(1.0), 1e4, 1.0),
                                     {100000, 7, 1, false});
    CHECK(dcrm::summarize(r.z).mean < 1e-3);
  }
  SUBCASE("lambda 1, Exp(1), delta 0.05, t 1: mean near 0.975412") {
    const auto r = dcrm::simulate_zt(poisson(1.0, ClaimDistribution::exponential(1.0), 0.05, 1.0),
                                     {100000, 42, 1, false});
    const auto s = dcrm::summarize(r.z);
    CHECK(oracle::within_sigmas(s.mean, 0.975412, s.mean_se));
  }
  SUBCASE("rejects zero paths") {
    CHECK_THROWS_AS(
        dcrm::simulate_zt(poisson(1.0, ClaimDistribution::exponential(1.0), 0.0, 1.0),
                          {0, 1, 1, false}),
        dcrm::ValidationError);
  }
}

TEST_CASE("analytic_mean") {
  SUBCASE("0.975412 agrees with an independent simulation") {
    const double mean = dcrm::analytic_mean(1.0, 1.0, 0.05, 1.0);
    CHECK(mean == doctest::Approx(0.975412).epsilon(1e-6));
    const auto s = dcrm::summarize(reference_zt(1.0, 1.0, 0.05, 1.0, 1000000, 11));
    CHECK(oracle::within_sigmas(s.mean, mean, s.mean_se));
  }
  SUBCASE("boundary cases") {
    CHECK(dcrm::analytic_mean(1.0, 1.0, 0.05, 0.0) == 0.0);
    CHECK(dcrm::analytic_mean(2.0, 3.0, 0.0, 4.0) == 24.0);
  }
  SUBCASE("continuity at delta = 0") {
    const double plain = 2.0 * 3.0 * 4.0;
    CHECK(std::abs(dcrm::analytic_mean(2.0, 3.0, 1e-10, 4.0) - plain) < 1e-6 * plain);
  }
  SUBCASE("perpetuity limit") {
    for (double delta : {0.01, 0.1, 1.0}) {
      const double limit = dcrm::perpetuity_mean(1.5, 2.0, delta);
      CHECK(limit == doctest::Approx(1.5 * 2.0 / delta));
      CHECK(oracle::rel_err(dcrm::analytic_mean(1.5, 2.0, delta, 1e3 / delta), limit) < 1e-6);
    }
  }
  SUBCASE("nondecreasing in t") {
    double previous = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double value = dcrm::analytic_mean(1.0, 1.0, 0.3, 0.1 * i);
      CHECK(value >= previous);
      previous = value;
    }
  }
  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS(dcrm::analytic_mean(1.0, -1.0, 0.05, 1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(dcrm::analytic_mean(1.0, 1.0, -0.05, 1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(dcrm::analytic_mean(1.0, 1.0, 0.05, -1.0), dcrm::ValidationError);
  }
}

TEST_CASE("analytic_variance") {
  SUBCASE("12.64241 agrees with an independent simulation") {
    const double variance = dcrm::analytic_variance(2.0, 2.0, 0.1, 5.0);
    CHECK(variance == doctest::Approx(12.64241).epsilon(1e-6));
    const auto s = dcrm::summarize(reference_zt(2.0, 1.0, 0.1, 5.0, 1000000, 12));
    CHECK(oracle::within_sigmas(s.variance, variance, s.variance_se));
  }
  SUBCASE("boundary cases") {
    CHECK(dcrm::analytic_variance(2.0, 2.0, 0.1, 0.0) == 0.0);
    CHECK(dcrm::analytic_variance(2.0, 1.0, 0.0, 3.0) == 6.0);
  }
}

TEST_CASE("analytic_moments follows the intensity") {
  const auto claim = ClaimDistribution::exponential(2.0);
  const auto constant = dcrm::analytic_moments(poisson(1.5, claim, 0.2, 3.0));
  REQUIRE(constant.has_value());
  CHECK(oracle::rel_err(constant->mean, dcrm::analytic_mean(2.0, 1.5, 0.2, 3.0)) < 1e-12);
  CHECK(oracle::rel_err(constant->variance, dcrm::analytic_variance(8.0, 1.5, 0.2, 3.0)) < 1e-12);

  const DcrmScenario ramp{claim, Intensity::function([](double s) { return s; }, 3.0), 0.2, 3.0};
  const auto moments = dcrm::analytic_moments(ramp);
  REQUIRE(moments.has_value());
  const double m = oracle::romberg([](double s) { return s * std::exp(-0.2 * s); }, 0.0, 3.0, 4000);
  const double v =
      oracle::romberg([](double s) { return s * std::exp(-0.4 * s); }, 0.0, 3.0, 4000);
  CHECK(oracle::rel_err(moments->mean, 2.0 * m) < 1e-9);
  CHECK(oracle::rel_err(moments->variance, 8.0 * v) < 1e-9);
}

TEST_CASE("mgf_nhpp") {
  const auto exp1 = ClaimDistribution::exponential(1.0);
  const auto one = Intensity::constant(1.0);
  SUBCASE("examples") {
    CHECK(dcrm::mgf_nhpp(exp1, one, 1.0, 1.0, 0.0) == 1.0);
    CHECK(dcrm::mgf_nhpp(ClaimDistribution::gamma(2.0, 0.5), Intensity::constant(3.0), 0.2, 2.0,
                         0.0) == 1.0);
    const double closed = (1.0 - 0.5 * std::exp(-1.0)) / 0.5;
    CHECK(closed == doctest::Approx(1.632121).epsilon(1e-6));
    CHECK(oracle::rel_err(dcrm::mgf_nhpp(exp1, one, 1.0, 1.0, 0.5), closed) < 1e-10);
    CHECK(dcrm::mgf_nhpp(exp1, Intensity::constant(0.0), 1.0, 1.0, 0.7) == 1.0);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(dcrm::mgf_nhpp(exp1, one, 1.0, 1.0, 1.0), dcrm::DomainError);
    CHECK_THROWS_AS(dcrm::mgf_nhpp(exp1, one, 0.0, 1.0, 2.0), dcrm::DomainError);
  }
  SUBCASE("first derivative at 0 is the mean") {
    for (double delta : {0.0, 0.05, 1.0}) {
      const double h = 1e-6;
      const double d1 = (dcrm::mgf_nhpp(exp1, Intensity::constant(2.0), delta, 1.5, h) -
                         dcrm::mgf_nhpp(exp1, Intensity::constant(2.0), delta, 1.5, -h)) /
                        (2.0 * h);
      CAPTURE(delta);
      CHECK(oracle::rel_err(d1, dcrm::analytic_mean(1.0, 2.0, delta, 1.5)) < 1e-4);
    }
  }
  SUBCASE("second derivative of log at 0 is the variance") {
    const auto gamma = ClaimDistribution::gamma(2.0, 1.5);
    for (double delta : {0.0, 0.1, 1.0}) {
      const double h = 1e-4;
      auto log_m = [&](double u) {
        return dcrm::log_mgf_nhpp(gamma, Intensity::constant(1.2), delta, 2.0, u);
      };
      const double d2 = (log_m(h) - 2.0 * log_m(0.0) + log_m(-h)) / (h * h);
      CAPTURE(delta);
      CHECK(oracle::rel_err(d2, dcrm::analytic_variance(gamma.moment(2), 1.2, delta, 2.0)) < 1e-3);
    }
  }
  SUBCASE("matches the exponential closed form on a u grid") {
    for (double beta : {0.5, 1.0, 3.0}) {
      for (int k = 0; k <= 5; ++k) {
        const double u = 0.1 * k / beta;
        const double q = dcrm::mgf_nhpp(ClaimDistribution::exponential(beta),
                                        Intensity::constant(1.3), 0.4, 2.0, u);
        CHECK(oracle::rel_err(q, dcrm::mgf_exponential_closed(beta, 1.3, 0.4, 2.0, u)) < 1e-8);
      }
    }
  }
  SUBCASE("time-varying intensity against a direct quadrature") {
    const Intensity wave =
        Intensity::function([](double s) { return 1.0 + 0.5 * std::sin(3.0 * s); }, 1.5);
    const double exponent = oracle::romberg(
        [](double s) {
          const double v = 0.3 * std::exp(-0.2 * s);
          return (1.0 + 0.5 * std::sin(3.0 * s)) * (1.0 / (1.0 - 2.0 * v) - 1.0);
        },
        0.0, 2.0, 20000);
    CHECK(oracle::rel_err(dcrm::mgf_nhpp(ClaimDistribution::exponential(2.0), wave, 0.2, 2.0, 0.3),
                          std::exp(exponent)) < 1e-9);
  }
}

TEST_CASE("mgf_exponential_closed") {
  SUBCASE("examples") {
    const double value = dcrm::mgf_exponential_closed(1.0, 1.0, 1.0, 1.0, 0.5);
    CHECK(value == doctest::Approx(1.632121).epsilon(1e-6));
    CHECK(oracle::rel_err(value, reference_mgf(1.0, 1.0, 1.0, 1.0, 0.5)) < 1e-9);
    CHECK(dcrm::mgf_exponential_closed(1.0, 1.0, 1.0, 1.0, 0.0) == 1.0);
    CHECK(oracle::rel_err(dcrm::mgf_exponential_closed(1.0, 1.0, 1e-8, 1.0, 0.5), std::exp(1.0)) <
          1e-6);
  }
  SUBCASE("delta = 0 uses the undiscounted form") {
    CHECK(dcrm::mgf_exponential_closed(2.0, 1.5, 0.0, 2.0, 0.1) ==
          dcrm::mgf_exponential_undiscounted(2.0, 1.5, 2.0, 0.1));
    CHECK(oracle::rel_err(dcrm::mgf_exponential_undiscounted(2.0, 1.5, 2.0, 0.1),
                          std::exp(1.5 * 2.0 * 0.2 / 0.8)) < 1e-14);
  }
  SUBCASE("long horizon approaches the perpetuity form") {
    const double limit = dcrm::mgf_exponential_perpetuity(1.0, 1.0, 0.5, 0.3);
    CHECK(oracle::rel_err(limit, std::pow(0.7, -2.0)) < 1e-14);
    CHECK(oracle::rel_err(dcrm::mgf_exponential_closed(1.0, 1.0, 0.5, 200.0, 0.3), limit) < 1e-12);
  }
  SUBCASE("domain") {
    CHECK_THROWS_AS(dcrm::mgf_exponential_closed(1.0, 1.0, 1.0, 1.0, 1.0), dcrm::DomainError);
    CHECK_THROWS_AS(dcrm::mgf_exponential_closed(2.0, 1.0, 1.0, 1.0, 0.6), dcrm::DomainError);
  }
}

TEST_CASE("martingale residuals") {
  const auto exp1 = ClaimDistribution::exponential(1.0);
  SUBCASE("zero intensity") {
    const auto scenario = poisson(0.0, exp1, 0.05, 1.0);
    const auto r = dcrm::simulate_zt(scenario, {500, 1, 1, true});
    const std::vector<double> grid{1.0};
    CHECK(dcrm::martingale_residual_a(r, scenario, grid)[0].mean == 0.0);
    const auto b = dcrm::martingale_residual_b(r, scenario, grid);
    CHECK(b[0].mean == 0.0);
    CHECK(b[0].standard_error == 0.0);
  }
  SUBCASE("Exp(1), lambda 1, delta 0.05") {
    const auto scenario = poisson(1.0, exp1, 0.05, 1.0);
    const auto r = dcrm::simulate_zt(scenario, {100000, 8, 1, true});
    for (const auto& p : dcrm::martingale_residual_a(r, scenario, std::vector{0.25, 0.5, 1.0})) {
      CAPTURE(p.time);
      CHECK(oracle::within_sigmas(p.mean, 0.0, p.standard_error));
    }
    for (const auto& p : dcrm::martingale_residual_b(r, scenario, std::vector{0.5, 1.0})) {
      CAPTURE(p.time);
      CHECK(oracle::within_sigmas(p.mean, 0.0, p.standard_error));
    }
  }
  SUBCASE("deterministic claims without discounting") {
    const auto scenario = poisson(1.0, ClaimDistribution::deterministic(2.0), 0.0, 1.0);
    const auto r = dcrm::simulate_zt(scenario, {100000, 9, 1, true});
    const std::vector<double> grid{1.0};
    const auto a = dcrm::martingale_residual_a(r, scenario, grid);
    CHECK(oracle::within_sigmas(a[0].mean, 0.0, a[0].standard_error));
    const auto b = dcrm::martingale_residual_b(r, scenario, grid);
    CHECK(oracle::within_sigmas(b[0].mean, 0.0, b[0].standard_error));
  }
  SUBCASE("a wrong mean is detected") {
    const auto scenario = poisson(1.0, exp1, 0.05, 1.0);
    const auto r = dcrm::simulate_zt(scenario, {100000, 10, 1, true});
    const auto a =
        dcrm::martingale_residuals(r, scenario, std::vector{1.0}, dcrm::Residual::Centered, 1.1);
    CHECK_FALSE(oracle::within_sigmas(a[0].mean, 0.0, a[0].standard_error));
  }
  SUBCASE("errors") {
    const auto scenario = poisson(1.0, exp1, 0.05, 1.0);
    const auto traced = dcrm::simulate_zt(scenario, {100, 1, 1, true});
    CHECK_THROWS_AS(dcrm::martingale_residual_a(traced, scenario, std::vector{1.5}),
                    dcrm::DomainError);
    CHECK_THROWS_AS(dcrm::martingale_residual_a(traced, scenario, std::vector{0.0}),
                    dcrm::DomainError);
    const auto bare = dcrm::simulate_zt(scenario, {100, 1, 1, false});
    CHECK_THROWS_AS(dcrm::martingale_residual_a(bare, scenario, std::vector{0.5}),
                    dcrm::ValidationError);
    CHECK_NOTHROW(dcrm::martingale_residual_a(bare, scenario, std::vector{1.0}));
    const DcrmScenario ramp{exp1, Intensity::function([](double s) { return s; }, 1.0), 0.05,
                            1.0};
    const auto ramp_result = dcrm::simulate_zt(ramp, {100, 1, 1, true});
    CHECK_THROWS_AS(dcrm::martingale_residual_a(ramp_result, ramp, std::vector{0.5}),
                    dcrm::ValidationError);
  }
}

TEST_CASE("z_at") {
  const auto scenario = poisson(3.0, ClaimDistribution::exponential(1.0), 0.1, 2.0);
  const auto r = dcrm::simulate_zt(scenario, {200, 4, 1, true});
  for (std::size_t p = 0; p < r.n_paths; ++p) {
    CHECK(r.z_at(p, 2.0) == doctest::Approx(r.z[p]).epsilon(1e-12));
    CHECK(r.z_at(p, 1.0) <= r.z_at(p, 2.0));
    CHECK(r.traces[p].arrival_times.size() == r.counts[p]);
  }
  CHECK_THROWS_AS(r.z_at(r.n_paths, 1.0), dcrm::DomainError);
  CHECK_THROWS_AS(r.z_at(0, 2.5), dcrm::DomainError);
}

TEST_CASE("estimate_mgf_empirical") {
  const auto exp1 = ClaimDistribution::exponential(1.0);
  SUBCASE("u = 0 and zero intensity are exact") {
    const auto r = dcrm::simulate_zt(poisson(1.0, exp1, 1.0, 1.0), {1000, 1, 1, false});
    const auto at_zero = dcrm::estimate_mgf_empirical(r, exp1, 0.0);
    CHECK(at_zero.value == 1.0);
    CHECK(at_zero.standard_error == 0.0);
    const auto none = dcrm::simulate_zt(poisson(0.0, exp1, 1.0, 1.0), {1000, 1, 1, false});
    const auto flat = dcrm::estimate_mgf_empirical(none, exp1, 0.4);
    CHECK(flat.value == 1.0);
    CHECK(flat.standard_error == 0.0);
  }
  SUBCASE("beta 1, lambda 1, delta 1, t 1, u 0.4") {
    const auto r = dcrm::simulate_zt(poisson(1.0, exp1, 1.0, 1.0), {1000000, 13, 1, false});
    const auto est = dcrm::estimate_mgf_empirical(r, exp1, 0.4);
    CHECK(oracle::within_sigmas(est.value, reference_mgf(1.0, 1.0, 1.0, 1.0, 0.4),
                                est.standard_error));
  }
  SUBCASE("u beyond half the boundary is rejected") {
    const auto r = dcrm::simulate_zt(poisson(1.0, exp1, 1.0, 1.0), {10, 1, 1, false});
    CHECK_NOTHROW(dcrm::estimate_mgf_empirical(r, exp1, 0.5));
    CHECK_THROWS_AS(dcrm::estimate_mgf_empirical(r, exp1, 0.51), dcrm::DomainError);
    CHECK_THROWS_AS(
        dcrm::estimate_mgf_empirical(r, ClaimDistribution::exponential(2.0), 0.3),
        dcrm::DomainError);
  }
}

TEST_CASE("results do not depend on the worker count") {
  const auto scenario = poisson(1.7, ClaimDistribution::gamma(2.0, 1.0), 0.05, 2.0);
  const auto one = dcrm::simulate_zt(scenario, {5001, 99, 1, true});
  for (unsigned threads : {2u, 3u, 4u, 8u}) {
    const auto many = dcrm::simulate_zt(scenario, {5001, 99, threads, true});
    CHECK(many.z == one.z);
    CHECK(many.counts == one.counts);
    for (std::size_t p = 0; p < one.n_paths; ++p) {
      REQUIRE(many.traces[p].arrival_times == one.traces[p].arrival_times);
      REQUIRE(many.traces[p].claims == one.traces[p].claims);
    }
  }
  const auto other = dcrm::simulate_zt(scenario, {5001, 100, 1, false});
  CHECK(other.z != one.z);
}

TEST_CASE("Cox counting scenarios simulate through the mileage model") {
  const DcrmScenario scenario{ClaimDistribution::exponential(1.0),
                              dcrm::CoxCounting{{0.0, 0.01}, dcrm::MileageModel::constant_speed(30.0)},
                              0.05, 1.0};
  const auto r = dcrm::simulate_zt(scenario, {100000, 14, 1, true});
  const auto s = dcrm::summarize(r.z);
  CHECK(oracle::within_sigmas(s.mean, 0.3 * (1.0 - std::exp(-0.05)) / 0.05, s.mean_se));
  CHECK(r.traces[0].mileage == doctest::Approx(30.0));
  CHECK(r.traces[0].exposure == doctest::Approx(0.3 * (1.0 - std::exp(-0.05)) / 0.05));
}
