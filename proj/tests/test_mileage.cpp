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
#include <sstream>
#include <vector>

#include "dcrm/error.hpp"
#include "dcrm/mileage.hpp"
#include "dcrm/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using dcrm::MileageModel;
using dcrm::MileagePath;
using dcrm::RandomStream;
using dcrm::TripLog;

namespace {

TripLog parse(const std::string& text) {
  std::istringstream in(text);
  return dcrm::ingest_trip_log(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const dcrm::ParseError& e) {
    return e.line();
  }
  return 0;
}

// Exact E[d(t)] for the on/off model started idle: the drive indicator is a
// two-state Markov chain, P(driving at s) = a/(a+b) (1 - exp(-(a+b) s)) with
// a = 1/mean_idle, b = 1/mean_drive.
double expected_renewal_mileage(double mean_drive, double mean_idle, double speed, double t) {
  const double a = 1.0 / mean_idle;
  const double b = 1.0 / mean_drive;
  const double r = a + b;
  return speed * a / r * (t - (1.0 - std::exp(-r * t)) / r);
}

}  // namespace

TEST_CASE("ingest_trip_log") {
  SUBCASE("single trip") {
    const TripLog log = parse("start,end,miles\n0,1,30\n");
    REQUIRE(log.trips().size() == 1);
    CHECK(log.trips()[0].start == 0.0);
    CHECK(log.trips()[0].end == 1.0);
    CHECK(log.trips()[0].miles == 30.0);
  }
  SUBCASE("overlap is reported at the later line") {
    CHECK(parse_error_line("start,end,miles\n0,2,10\n1,3,10\n") == 3);
    CHECK_THROWS_WITH_AS(parse("start,end,miles\n0,2,10\n1,3,10\n"),
                         doctest::Contains("overlap"), dcrm::ParseError);
  }
  SUBCASE("header only gives an empty log with zero mileage") {
    const TripLog log = parse("start,end,miles\n");
    CHECK(log.empty());
    RandomStream rng(1);
    const MileagePath path = MileageModel::from_trip_log(log).realize(3.0, rng);
    for (double t : {0.0, 1.0, 2.5, 3.0}) {
      CHECK(path.cumulative(t) == 0.0);
    }
  }
  SUBCASE("unsorted rows are sorted") {
    const TripLog log = parse("start,end,miles\n2,3,5\n0,1,7\n");
    CHECK(log.trips()[0].start == 0.0);
    CHECK(log.trips()[1].start == 2.0);
  }
  SUBCASE("touching trips are allowed; CRLF and blank lines are tolerated") {
    CHECK(parse("start,end,miles\r\n0,1,5\r\n\r\n1,2,5\r\n").trips().size() == 2);
  }
  SUBCASE("errors carry line numbers") {
    CHECK(parse_error_line("") == 1);
    CHECK(parse_error_line("begin,end,miles\n") == 1);
    CHECK(parse_error_line("start,end,miles\n0,1,abc\n") == 2);
    CHECK(parse_error_line("start,end,miles\n0,1\n") == 2);
    CHECK(parse_error_line("start,end,miles\n0,1,2,3\n") == 2);
    CHECK(parse_error_line("start,end,miles\n0,1,1\n-1,0.5,3\n") == 3);
    CHECK(parse_error_line("start,end,miles\n0,1,-4\n") == 2);
    CHECK(parse_error_line("start,end,miles\n\n2,1,4\n") == 3);
  }
}

TEST_CASE("TripLog constructor validates invariants") {
  CHECK_THROWS_AS(TripLog({{1.0, 2.0, 1.0}, {0.0, 0.5, 1.0}}), dcrm::ValidationError);
  CHECK_THROWS_AS(TripLog({{0.0, 2.0, 1.0}, {1.0, 3.0, 1.0}}), dcrm::ValidationError);
  CHECK_THROWS_AS(TripLog({{0.0, 0.0, 1.0}}), dcrm::ValidationError);
  CHECK_THROWS_AS(TripLog({{0.0, 1.0, -1.0}}), dcrm::ValidationError);
  CHECK(TripLog({{0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}}).total_miles() == 5.0);
}

TEST_CASE("realize_path") {
  RandomStream rng(7);
  SUBCASE("constant speed") {
    const MileagePath path = MileageModel::constant_speed(30.0).realize(2.0, rng);
    CHECK(path.cumulative(2.0) == 60.0);
    CHECK(path.cumulative(0.0) == 0.0);
  }
  SUBCASE("from trip log") {
    const MileagePath path =
        MileageModel::from_trip_log(TripLog({{0.0, 1.0, 30.0}})).realize(2.0, rng);
    CHECK(path.cumulative(1.0) == 30.0);
    CHECK(path.cumulative(2.0) == 30.0);
    CHECK(path.cumulative(0.5) == 15.0);
  }
  SUBCASE("trips past the horizon are truncated") {
    const MileagePath path =
        MileageModel::from_trip_log(TripLog({{0.5, 1.5, 10.0}, {3.0, 4.0, 10.0}})).realize(1.0, rng);
    CHECK(path.horizon() == 1.0);
    CHECK(path.cumulative(1.0) == doctest::Approx(5.0));
  }
  SUBCASE("alternating renewal long-run rate v * drive / (drive + idle)") {
    const auto model = MileageModel::alternating_renewal(1.0, 1.0, 30.0);
    std::vector<double> rate(10000);
    for (std::size_t i = 0; i < rate.size(); ++i) {
      RandomStream path_rng = RandomStream::derive(2026, i);
      rate[i] = model.realize(1000.0, path_rng).cumulative(1000.0) / 1000.0;
    }
    const auto s = dcrm::summarize(rate);
    CHECK(oracle::within_sigmas(s.mean, 15.0, s.mean_se));
  }
  SUBCASE("alternating renewal finite-horizon mean, started idle") {
    const auto model = MileageModel::alternating_renewal(0.5, 2.0, 40.0);
    std::vector<double> miles(20000);
    for (std::size_t i = 0; i < miles.size(); ++i) {
      RandomStream path_rng = RandomStream::derive(77, i);
      miles[i] = model.realize(3.0, path_rng).cumulative(3.0);
    }
    const auto s = dcrm::summarize(miles);
    CHECK(oracle::within_sigmas(s.mean, expected_renewal_mileage(0.5, 2.0, 40.0, 3.0), s.mean_se));
  }
  SUBCASE("invalid models") {
    CHECK_THROWS_AS(MileageModel::constant_speed(-1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(MileageModel::alternating_renewal(0.0, 1.0, 1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(MileageModel::alternating_renewal(1.0, 0.0, 1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(MileageModel::alternating_renewal(1.0, 1.0, -1.0), dcrm::ValidationError);
    CHECK_THROWS_AS(MileageModel::constant_speed(1.0).realize(0.0, rng), dcrm::ValidationError);
  }
}

TEST_CASE("speed_at") {
  RandomStream rng(1);
  const MileagePath constant = MileageModel::constant_speed(30.0).realize(2.0, rng);
  CHECK(constant.speed_at(0.5) == 30.0);
  const MileagePath trip = MileageModel::from_trip_log(TripLog({{0.0, 1.0, 30.0}})).realize(2.0, rng);
  CHECK(trip.speed_at(1.5) == 0.0);
  CHECK(trip.speed_at(0.0) == 30.0);
  CHECK(trip.speed_at(1.0) == 0.0);  // right-continuous
  CHECK(trip.speed_at(2.0) == 0.0);
  CHECK_THROWS_AS(trip.speed_at(2.5), dcrm::DomainError);
  CHECK_THROWS_AS(trip.speed_at(-0.1), dcrm::DomainError);
  CHECK_THROWS_AS(trip.cumulative(2.1), dcrm::DomainError);
}

namespace {

std::vector<MileageModel> models() {
  return {MileageModel::constant_speed(30.0),
          MileageModel::from_trip_log(TripLog({{0.1, 0.3, 7.0}, {0.3, 0.35, 2.0}, {1.2, 2.9, 40.0}})),
          MileageModel::from_trip_log(TripLog()),
          MileageModel::alternating_renewal(0.2, 0.3, 25.0),
          MileageModel::alternating_renewal(5.0, 0.1, 60.0)};
}

}  // namespace

TEST_CASE("property: speed integrates to cumulative distance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& model : models()) {
      RandomStream rng(seed);
      const MileagePath path = model.realize(3.0, rng);
      const auto b = path.breakpoints();
      double integral = 0.0;
      for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        integral += path.speed_at(0.5 * (b[i] + b[i + 1])) * (b[i + 1] - b[i]);
      }
      const double total = path.cumulative(3.0);
      if (total == 0.0) {
        CHECK(integral == 0.0);
      } else {
        CHECK(oracle::rel_err(integral, total) < 1e-9);
      }
    }
  }
}

TEST_CASE("property: cumulative is nondecreasing on a 1e4-point grid") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const auto& model : models()) {
      RandomStream rng(seed);
      const MileagePath path = model.realize(3.0, rng);
      double previous = path.cumulative(0.0);
      CHECK(previous == 0.0);
      bool monotone = true;
      for (int i = 1; i <= 10000; ++i) {
        const double now = path.cumulative(3.0 * i / 10000.0);
        monotone = monotone && now >= previous;
        previous = now;
      }
      CHECK(monotone);
    }
  }
}

TEST_CASE("property: trip-log cumulative at each trip end is the running sum of miles") {
  std::vector<dcrm::Trip> trips;
  double t = 0.0;
  RandomStream gen(5);
  for (int i = 0; i < 200; ++i) {
    t += gen.uniform() * 0.01;
    const double end = t + 0.001 + gen.uniform() * 0.02;
    trips.push_back({t, end, gen.uniform() * 13.7});
    t = end;
  }
  const MileageModel model = MileageModel::from_trip_log(TripLog(trips));
  RandomStream rng(0);
  const MileagePath path = model.realize(t + 1.0, rng);
  double running = 0.0;
  for (const auto& trip : trips) {
    running += trip.miles;
    CHECK(path.cumulative(trip.end) == running);
  }
}

TEST_CASE("deterministic models ignore the stream; renewal paths are reproducible per seed") {
  for (const auto& model : models()) {
    RandomStream a(1), b(2), c(1);
    const MileagePath pa = model.realize(4.0, a);
    const MileagePath pb = model.realize(4.0, b);
    const MileagePath pc = model.realize(4.0, c);
    const auto same = [](const MileagePath& x, const MileagePath& y) {
      return std::equal(x.breakpoints().begin(), x.breakpoints().end(), y.breakpoints().begin(),
                        y.breakpoints().end()) &&
             std::equal(x.speeds().begin(), x.speeds().end(), y.speeds().begin(), y.speeds().end());
    };
    CHECK(same(pa, pc));
    CHECK(same(pa, pb) == model.deterministic());
  }
}
