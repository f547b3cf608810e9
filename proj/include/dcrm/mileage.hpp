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

#ifndef DCRM_MILEAGE_HPP
#define DCRM_MILEAGE_HPP

#include <filesystem>
#include <istream>
#include <span>
#include <variant>
#include <vector>

#include "dcrm/random_stream.hpp"

namespace dcrm {

struct Trip {
  double start;
  double end;
  double miles;
};

/// Sorted, non-overlapping trips with nonnegative mileage.
class TripLog {
 public:
  TripLog() = default;

  /// Validates and takes ownership. Trips must already be sorted by start.
  explicit TripLog(std::vector<Trip> trips);

  std::span<const Trip> trips() const noexcept { return trips_; }
  bool empty() const noexcept { return trips_.empty(); }
  double total_miles() const noexcept;

 private:
  std::vector<Trip> trips_;
};

/// Reads CSV with header `start,end,miles`. Throws ParseError carrying the
/// offending line number (for malformed rows and for invariant violations).
TripLog ingest_trip_log(std::istream& in);
TripLog load_trip_log(const std::filesystem::path& path);

/// A realized cumulative-distance trajectory d(t) on [0, horizon].
///
/// Speed is constant on each segment [breakpoints[i], breakpoints[i+1]) and
/// the cumulative distance is its running integral, so d(0) = 0 and d is
/// nondecreasing and piecewise linear.
class MileagePath {
 public:
  /// `breakpoints` starts at 0, is strictly increasing and ends at the
  /// horizon; `speeds` has one entry per segment.
  MileagePath(std::vector<double> breakpoints, std::vector<double> speeds);

  /// Same, but from per-segment distances. Cumulative distance at each
  /// breakpoint is then the running sum of those distances exactly.
  static MileagePath from_distances(std::vector<double> breakpoints,
                                    std::vector<double> distances);

  double horizon() const noexcept { return breakpoints_.back(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }
  std::span<const double> speeds() const noexcept { return speeds_; }

  double cumulative(double t) const;

  /// Right-continuous instantaneous speed; at the horizon itself the last
  /// segment's speed is returned. Throws DomainError outside [0, horizon].
  double speed_at(double s) const;

  double max_speed() const noexcept;

 private:
  MileagePath(std::vector<double> breakpoints, std::vector<double> speeds,
              const std::vector<double>* distances);
  friend class MileageModel;

  std::size_t segment_of(double t) const;

  std::vector<double> breakpoints_;
  std::vector<double> speeds_;
  std::vector<double> cumulative_;  // d(breakpoints_[i])
};

struct ConstantSpeed {
  double speed;
};

struct FromTripLog {
  TripLog log;
};

/// On/off driving: exponential idle and drive sojourns, starting idle at 0.
struct AlternatingRenewal {
  double mean_drive;
  double mean_idle;
  double speed;
};

class MileageModel {
 public:
  using Kind = std::variant<ConstantSpeed, FromTripLog, AlternatingRenewal>;

  static MileageModel constant_speed(double speed);
  static MileageModel from_trip_log(TripLog log);
  static MileageModel alternating_renewal(double mean_drive, double mean_idle, double speed);

  const Kind& kind() const noexcept { return kind_; }

  /// True when every realization is the same path.
  bool deterministic() const noexcept;

  /// Realizes d on [0, horizon]. Deterministic models ignore `rng`.
  MileagePath realize(double horizon, RandomStream& rng) const;

 private:
  explicit MileageModel(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

}  // namespace dcrm

#endif  // DCRM_MILEAGE_HPP
