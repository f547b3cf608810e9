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

#include "dcrm/intensity.hpp"

#include <algorithm>
#include <cmath>

#include "dcrm/error.hpp"
#include "overloaded.hpp"
#include "quadrature.hpp"

namespace dcrm {

using detail::overloaded;

namespace {

void require_rate(double rate, const char* what) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ValidationError(std::string(what) + " must be finite and >= 0");
  }
}

}  // namespace

Intensity Intensity::constant(double rate) {
  require_rate(rate, "intensity rate");
  return Intensity(Constant{rate});
}

Intensity Intensity::piecewise_constant(std::vector<double> starts, std::vector<double> rates) {
  if (starts.empty() || starts.size() != rates.size()) {
    throw ValidationError("piecewise intensity needs one rate per start time");
  }
  if (starts.front() != 0.0) {
    throw ValidationError("piecewise intensity must start at time 0");
  }
  for (std::size_t i = 0; i < rates.size(); ++i) {
    require_rate(rates[i], "piecewise intensity rate");
    if (i > 0 && !(starts[i] > starts[i - 1])) {
      throw ValidationError("piecewise intensity start times must be strictly increasing");
    }
  }
  return Intensity(Steps{std::move(starts), std::move(rates)});
}

Intensity Intensity::function(std::function<double(double)> rate, double bound,
                              std::vector<double> kinks) {
  if (!rate) {
    throw ValidationError("intensity function is empty");
  }
  require_rate(bound, "intensity bound");
  std::sort(kinks.begin(), kinks.end());
  return Intensity(Function{std::move(rate), bound, std::move(kinks)});
}

double Intensity::operator()(double t) const {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.rate; },
                        [&](const Steps& s) {
                          const auto it = std::upper_bound(s.starts.begin(), s.starts.end(), t);
                          if (it == s.starts.begin()) {
                            return s.rates.front();
                          }
                          return s.rates[static_cast<std::size_t>(it - s.starts.begin()) - 1];
                        },
                        [&](const Function& f) { return f.rate(t); },
                    },
                    repr_);
}

std::optional<double> Intensity::constant_rate() const noexcept {
  if (const auto* c = std::get_if<Constant>(&repr_)) {
    return c->rate;
  }
  return std::nullopt;
}

double Intensity::upper_bound(double horizon) const {
  return std::visit(overloaded{
                        [](const Constant& c) { return c.rate; },
                        [&](const Steps& s) {
                          double m = 0.0;
                          for (std::size_t i = 0; i < s.rates.size() && s.starts[i] < horizon;
                               ++i) {
                            m = std::max(m, s.rates[i]);
                          }
                          return m;
                        },
                        [](const Function& f) { return f.bound; },
                    },
                    repr_);
}

std::vector<Intensity::Segment> Intensity::segments(double horizon) const {
  std::vector<Segment> out;
  std::visit(overloaded{
                 [&](const Constant& c) { out.push_back({0.0, horizon, c.rate}); },
                 [&](const Steps& s) {
                   for (std::size_t i = 0; i < s.starts.size() && s.starts[i] < horizon; ++i) {
                     const double end =
                         i + 1 < s.starts.size() ? std::min(s.starts[i + 1], horizon) : horizon;
                     out.push_back({s.starts[i], end, s.rates[i]});
                   }
                 },
                 [&](const Function& f) {
                   double begin = 0.0;
                   for (double k : f.kinks) {
                     if (k > begin && k < horizon) {
                       out.push_back({begin, k, std::nullopt});
                       begin = k;
                     }
                   }
                   out.push_back({begin, horizon, std::nullopt});
                 },
             },
             repr_);
  return out;
}

void MileageAffine::validate() const {
  require_rate(base_rate, "base rate");
  require_rate(per_mile, "per-mile rate");
}

Intensity MileageAffine::on_path(const MileagePath& path) const {
  validate();
  const auto breaks = path.breakpoints();
  const auto speeds = path.speeds();
  std::vector<double> starts(breaks.begin(), breaks.end() - 1);
  std::vector<double> rates(speeds.size());
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    rates[i] = base_rate + per_mile * speeds[i];
  }
  return Intensity::piecewise_constant(std::move(starts), std::move(rates));
}

double discounted_length(double a, double b, double delta) {
  if (delta == 0.0) {
    return b - a;
  }
  // exp(-delta a) * (1 - exp(-delta (b - a))) / delta, via expm1 for small delta.
  return std::exp(-delta * a) * -std::expm1(-delta * (b - a)) / delta;
}

double intensity_integral(const Intensity& intensity, double delta, double horizon) {
  if (!(delta >= 0.0)) {
    throw ValidationError("force of interest must be >= 0");
  }
  if (!(horizon >= 0.0)) {
    throw ValidationError("horizon must be >= 0");
  }
  double total = 0.0;
  for (const auto& seg : intensity.segments(horizon)) {
    if (seg.rate) {
      if (*seg.rate != 0.0) {
        total += *seg.rate * discounted_length(seg.begin, seg.end, delta);
      }
    } else {
      total += detail::integrate(
          [&](double s) { return intensity(s) * std::exp(-delta * s); }, seg.begin, seg.end);
    }
  }
  return total;
}

}  // namespace dcrm
