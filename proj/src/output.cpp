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

#include "dcrm/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dcrm/error.hpp"

namespace dcrm {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

void write_paths_csv(std::ostream& out, const SimulationResult& result) {
  out << "path,z,count\n";
  for (std::size_t p = 0; p < result.z.size(); ++p) {
    out << p << ',' << format_number(result.z[p]) << ',' << result.counts[p] << '\n';
  }
}

void write_arrivals_csv(std::ostream& out, const SimulationResult& result) {
  out << "path,time,claim\n";
  for (std::size_t p = 0; p < result.traces.size(); ++p) {
    const PathTrace& trace = result.traces[p];
    for (std::size_t i = 0; i < trace.arrival_times.size(); ++i) {
      out << p << ',' << format_number(trace.arrival_times[i]) << ','
          << format_number(trace.claims[i]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const SimulationResult& result,
                       const std::optional<Moments>& analytic) {
  const SampleSummary z = summarize(result.z);
  std::vector<double> counts(result.counts.begin(), result.counts.end());
  const SampleSummary n = summarize(counts);
  const auto row = [&](const char* stat, double value, double se) {
    out << stat << ',' << format_number(value) << ',' << format_number(se) << '\n';
  };
  out << "stat,value,stderr\n";
  row("paths", static_cast<double>(result.n_paths), 0.0);
  row("mean", z.mean, z.mean_se);
  row("variance", z.variance, z.variance_se);
  row("mean_count", n.mean, n.mean_se);
  if (analytic) {
    row("analytic_mean", analytic->mean, 0.0);
    row("analytic_variance", analytic->variance, 0.0);
  }
}

void write_quote_csv(std::ostream& out, const PremiumQuote& quote) {
  out << "net_premium,stderr,per_expected_mile,n_outer\n"
      << format_number(quote.net_premium) << ',' << format_number(quote.standard_error) << ','
      << format_number(quote.per_expected_mile) << ',' << quote.n_outer_paths << '\n';
}

void write_outer_paths_csv(std::ostream& out, std::span<const OuterPath> paths) {
  out << "path,premium,mileage\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    out << i << ',' << format_number(paths[i].premium) << ',' << format_number(paths[i].mileage)
        << '\n';
  }
}

std::string format_quote_text(const PremiumQuote& quote, const PaydPolicy& policy) {
  std::ostringstream out;
  out << "PAYD net premium\n"
      << "  claim law           " << policy.claim.describe() << '\n'
      << "  intensity           " << format_number(policy.intensity.base_rate) << " + "
      << format_number(policy.intensity.per_mile) << " * speed\n"
      << "  force of interest   " << format_number(policy.delta) << '\n'
      << "  horizon             " << format_number(policy.horizon) << '\n'
      << "  net premium         " << format_number(quote.net_premium) << '\n'
      << "  standard error      " << format_number(quote.standard_error) << '\n'
      << "  expected mileage    " << format_number(quote.expected_mileage) << '\n'
      << "  per expected mile   " << format_number(quote.per_expected_mile) << '\n'
      << "  mileage paths       " << quote.n_outer_paths << '\n';
  return out.str();
}

void write_files_atomically(const std::filesystem::path& directory,
                            const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + directory.string() + "': " + ec.message());
  }
  std::vector<std::filesystem::path> temps;
  const auto cleanup = [&] {
    for (const auto& t : temps) {
      std::filesystem::remove(t, ec);
    }
  };
  for (const auto& [name, content] : files) {
    const auto temp = directory / (name + ".partial");
    temps.push_back(temp);
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write '" + temp.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::filesystem::rename(temps[i], directory / files[i].first, ec);
    if (ec) {
      cleanup();
      throw IoError("cannot move output into '" + (directory / files[i].first).string() +
                    "': " + ec.message());
    }
  }
}

}  // namespace dcrm
