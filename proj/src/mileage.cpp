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

#include "dcrm/mileage.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "dcrm/error.hpp"
#include "overloaded.hpp"

namespace dcrm {

using detail::overloaded;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_field(std::string_view text, std::size_t line, const char* name) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ParseError(line, std::string("field '") + name + "' is not a number: '" +
                               std::string(text) + "'");
  }
  return value;
}

void check_trip(const Trip& trip) {
  if (!(trip.start >= 0.0)) {
    throw ValidationError("trip start must be >= 0");
  }
  if (!(trip.end > trip.start)) {
    throw ValidationError("trip end must be greater than its start");
  }
  if (!(trip.miles >= 0.0)) {
    throw ValidationError("trip miles must be >= 0");
  }
}

}  // namespace

TripLog::TripLog(std::vector<Trip> trips) : trips_(std::move(trips)) {
  for (std::size_t i = 0; i < trips_.size(); ++i) {
    check_trip(trips_[i]);
    if (i > 0 && trips_[i].start < trips_[i - 1].start) {
      throw ValidationError("trips must be sorted by start");
    }
    if (i > 0 && trips_[i].start < trips_[i - 1].end) {
      throw ValidationError("trips must not overlap");
    }
  }
}

double TripLog::total_miles() const noexcept {
  double total = 0.0;
  for (const auto& t : trips_) {
    total += t.miles;
  }
  return total;
}

TripLog ingest_trip_log(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;

  struct Row {
    Trip trip;
    std::size_t line;
  };
  std::vector<Row> rows;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      continue;
    }
    if (!have_header) {
      std::string header;
      for (char c : line) {
        if (c != ' ' && c != '\t') {
          header.push_back(c);
        }
      }
      if (header != "start,end,miles") {
        throw ParseError(line_no, "expected header 'start,end,miles'");
      }
      have_header = true;
      continue;
    }

    std::string_view fields[3];
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      if (count == 3) {
        throw ParseError(line_no, "expected 3 fields");
      }
      fields[count++] = line.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      if (comma == std::string_view::npos) {
        break;
      }
      pos = comma + 1;
    }
    if (count != 3) {
      throw ParseError(line_no, "expected 3 fields");
    }
    Trip trip{parse_field(fields[0], line_no, "start"), parse_field(fields[1], line_no, "end"),
              parse_field(fields[2], line_no, "miles")};
    try {
      check_trip(trip);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    rows.push_back({trip, line_no});
  }
  if (!have_header) {
    throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'start,end,miles'");
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.trip.start < b.trip.start; });
  std::vector<Trip> trips;
  trips.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].trip.start < rows[i - 1].trip.end) {
      const std::size_t later = std::max(rows[i].line, rows[i - 1].line);
      std::ostringstream msg;
      msg << "trips overlap: [" << rows[i - 1].trip.start << ", " << rows[i - 1].trip.end
          << ") and [" << rows[i].trip.start << ", " << rows[i].trip.end << ")";
      throw ParseError(later, msg.str());
    }
    trips.push_back(rows[i].trip);
  }
  return TripLog(std::move(trips));
}

TripLog load_trip_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open trip log '" + path.string() + "'");
  }
  return ingest_trip_log(in);
}

MileagePath::MileagePath(std::vector<double> breakpoints, std::vector<double> speeds)
    : MileagePath(std::move(breakpoints), std::move(speeds), nullptr) {}

MileagePath MileagePath::from_distances(std::vector<double> breakpoints,
                                        std::vector<double> distances) {
  if (breakpoints.size() != distances.size() + 1) {
    throw ValidationError("mileage path needs one distance per segment");
  }
  std::vector<double> speeds(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double duration = breakpoints[i + 1] - breakpoints[i];
    speeds[i] = duration > 0.0 ? distances[i] / duration : 0.0;
  }
  return MileagePath(std::move(breakpoints), std::move(speeds), &distances);
}

MileagePath::MileagePath(std::vector<double> breakpoints, std::vector<double> speeds,
                         const std::vector<double>* distances)
    : breakpoints_(std::move(breakpoints)), speeds_(std::move(speeds)) {
  if (breakpoints_.size() < 2 || speeds_.size() + 1 != breakpoints_.size()) {
    throw ValidationError("mileage path needs one speed per segment and at least one segment");
  }
  if (breakpoints_.front() != 0.0) {
    throw ValidationError("mileage path must start at time 0");
  }
  cumulative_.resize(breakpoints_.size());
  cumulative_[0] = 0.0;
  for (std::size_t i = 0; i < speeds_.size(); ++i) {
    if (!(breakpoints_[i + 1] > breakpoints_[i])) {
      throw ValidationError("mileage path breakpoints must be strictly increasing");
    }
    if (!(speeds_[i] >= 0.0) || !std::isfinite(speeds_[i])) {
      throw ValidationError("mileage path speeds must be finite and >= 0");
    }
    const double step = distances ? (*distances)[i]
                                  : speeds_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
    cumulative_[i + 1] = cumulative_[i] + step;
  }
}

std::size_t MileagePath::segment_of(double t) const {
  if (!(t >= 0.0) || t > horizon()) {
    throw DomainError("time " + std::to_string(t) + " outside mileage path range [0, " +
                      std::to_string(horizon()) + "]");
  }
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(idx, speeds_.size() - 1);
}

double MileagePath::cumulative(double t) const {
  const std::size_t i = segment_of(t);
  if (t == breakpoints_[i + 1]) {
    return cumulative_[i + 1];
  }
  return std::min(cumulative_[i] + speeds_[i] * (t - breakpoints_[i]), cumulative_[i + 1]);
}

double MileagePath::speed_at(double s) const { return speeds_[segment_of(s)]; }

double MileagePath::max_speed() const noexcept {
  return *std::max_element(speeds_.begin(), speeds_.end());
}

MileageModel MileageModel::constant_speed(double speed) {
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw ValidationError("constant speed must be finite and >= 0");
  }
  return MileageModel(ConstantSpeed{speed});
}

MileageModel MileageModel::from_trip_log(TripLog log) {
  return MileageModel(FromTripLog{std::move(log)});
}

MileageModel MileageModel::alternating_renewal(double mean_drive, double mean_idle,
                                               double speed) {
  if (!(mean_drive > 0.0) || !std::isfinite(mean_drive)) {
    throw ValidationError("mean drive duration must be positive and finite");
  }
  if (!(mean_idle > 0.0) || !std::isfinite(mean_idle)) {
    throw ValidationError("mean idle duration must be positive and finite");
  }
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw ValidationError("driving speed must be finite and >= 0");
  }
  return MileageModel(AlternatingRenewal{mean_drive, mean_idle, speed});
}

bool MileageModel::deterministic() const noexcept {
  return !std::holds_alternative<AlternatingRenewal>(kind_);
}

MileagePath MileageModel::realize(double horizon, RandomStream& rng) const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw ValidationError("mileage horizon must be positive and finite");
  }
  std::vector<double> breaks{0.0};
  std::vector<double> speeds;
  std::vector<double> distances;
  // Appends [breaks.back(), end) at `speed`; `distance` overrides speed * duration.
  const auto push = [&](double end, double speed, double distance = -1.0) {
    if (end <= breaks.back()) {
      return;
    }
    const double d = distance >= 0.0 ? distance : speed * (end - breaks.back());
    if (!speeds.empty() && speeds.back() == speed) {
      breaks.back() = end;
      distances.back() += d;
      return;
    }
    breaks.push_back(end);
    speeds.push_back(speed);
    distances.push_back(d);
  };

  std::visit(overloaded{
                 [&](const ConstantSpeed& c) { push(horizon, c.speed); },
                 [&](const FromTripLog& f) {
                   for (const Trip& trip : f.log.trips()) {
                     if (trip.start >= horizon) {
                       break;
                     }
                     push(trip.start, 0.0);
                     const double speed = trip.miles / (trip.end - trip.start);
                     if (trip.end <= horizon) {
                       push(trip.end, speed, trip.miles);
                     } else {
                       push(horizon, speed);
                     }
                   }
                   push(horizon, 0.0);
                 },
                 [&](const AlternatingRenewal& a) {
                   double t = 0.0;
                   bool driving = false;
                   while (t < horizon) {
                     const double sojourn = rng.exponential(driving ? a.mean_drive : a.mean_idle);
                     const double end = std::min(t + sojourn, horizon);
                     push(end, driving ? a.speed : 0.0);
                     t = end;
                     driving = !driving;
                   }
                 },
             },
             kind_);
  return MileagePath(std::move(breaks), std::move(speeds), &distances);
}

}  // namespace dcrm
