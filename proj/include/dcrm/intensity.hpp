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

#ifndef DCRM_INTENSITY_HPP
#define DCRM_INTENSITY_HPP

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dcrm/mileage.hpp"

namespace dcrm {

/// A deterministic claim intensity lambda(t) >= 0 on [0, horizon].
///
/// Three representations: a constant, a right-continuous step function, or
/// an arbitrary callable with a user-supplied upper bound (optionally with
/// known kink points, which integration treats as segment boundaries).
class Intensity {
 public:
  struct Segment {
    double begin;
    double end;
    std::optional<double> rate;  // set when lambda is constant on the segment
  };

  static Intensity constant(double rate);

  /// Rate `rates[i]` applies on [starts[i], starts[i+1]); the last rate
  /// extends to +inf. `starts` begins at 0 and is strictly increasing.
  static Intensity piecewise_constant(std::vector<double> starts, std::vector<double> rates);

  /// `bound` must dominate `rate` wherever it is evaluated; violations are
  /// detected at simulation time.
  static Intensity function(std::function<double(double)> rate, double bound,
                            std::vector<double> kinks = {});

  double operator()(double t) const;

  std::optional<double> constant_rate() const noexcept;

  /// Upper bound of lambda on [0, horizon].
  double upper_bound(double horizon) const;

  /// Splits [0, horizon] at every discontinuity or kink.
  std::vector<Segment> segments(double horizon) const;

 private:
  struct Constant {
    double rate;
  };
  struct Steps {
    std::vector<double> starts;
    std::vector<double> rates;
  };
  struct Function {
    std::function<double(double)> rate;
    double bound;
    std::vector<double> kinks;
  };
  using Repr = std::variant<Constant, Steps, Function>;

  explicit Intensity(Repr repr) : repr_(std::move(repr)) {}

  Repr repr_;
};

/// lambda(t, d) = base_rate + per_mile * d'(t): hazard accrues with distance
/// driven, plus a mileage-independent floor.
struct MileageAffine {
  double base_rate;
  double per_mile;

  void validate() const;

  /// Deterministic intensity obtained by fixing one mileage realization.
  Intensity on_path(const MileagePath& path) const;
};

/// (exp(-delta a) - exp(-delta b)) / delta, with the exact limit b - a at
/// delta = 0.
double discounted_length(double a, double b, double delta);

/// Integral of lambda(s) exp(-delta s) over [0, horizon]. Closed form on
/// constant segments, adaptive Gauss-Kronrod elsewhere (relative 1e-12).
double intensity_integral(const Intensity& intensity, double delta, double horizon);

}  // namespace dcrm

#endif  // DCRM_INTENSITY_HPP
