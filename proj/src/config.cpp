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

#include "dcrm/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace dcrm {

namespace {

// Minimal TOML-like document: `[section]` headers, `key = value` lines,
// values are numbers, "strings", booleans, [arrays] and { inline tables }.
// Everything fits on one line; `#` starts a comment outside strings.
struct Value {
  enum class Type { Number, String, Boolean, Array, Table };

  Type type = Type::Number;
  double number = 0.0;
  bool integral = false;
  std::string text;
  bool boolean = false;
  std::vector<Value> items;
  std::vector<std::pair<std::string, Value>> fields;
  std::size_t line = 0;
};

const char* type_name(Value::Type t) {
  switch (t) {
    case Value::Type::Number:
      return "number";
    case Value::Type::String:
      return "string";
    case Value::Type::Boolean:
      return "boolean";
    case Value::Type::Array:
      return "array";
    case Value::Type::Table:
      return "table";
  }
  return "value";
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : s_(text), line_(line) {}

  Value value() {
    skip_ws();
    if (done()) {
      fail("missing value");
    }
    Value v;
    v.line = line_;
    const char c = s_[pos_];
    if (c == '"') {
      v.type = Value::Type::String;
      v.text = string();
    } else if (c == '[') {
      v.type = Value::Type::Array;
      ++pos_;
      skip_ws();
      if (peek(']')) {
        ++pos_;
        return v;
      }
      while (true) {
        v.items.push_back(value());
        skip_ws();
        if (peek(',')) {
          ++pos_;
          continue;
        }
        expect(']');
        break;
      }
    } else if (c == '{') {
      v.type = Value::Type::Table;
      ++pos_;
      skip_ws();
      if (peek('}')) {
        ++pos_;
        return v;
      }
      while (true) {
        std::string k = key();
        skip_ws();
        expect('=');
        for (const auto& f : v.fields) {
          if (f.first == k) {
            fail("duplicate key '" + k + "'");
          }
        }
        v.fields.emplace_back(std::move(k), value());
        skip_ws();
        if (peek(',')) {
          ++pos_;
          continue;
        }
        expect('}');
        break;
      }
    } else if (s_.substr(pos_).starts_with("true")) {
      v.type = Value::Type::Boolean;
      v.boolean = true;
      pos_ += 4;
    } else if (s_.substr(pos_).starts_with("false")) {
      v.type = Value::Type::Boolean;
      pos_ += 5;
    } else {
      v.type = Value::Type::Number;
      const std::size_t start = pos_;
      while (!done() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                         s_[pos_] == '-' || s_[pos_] == '+')) {
        ++pos_;
      }
      std::string_view token = s_.substr(start, pos_ - start);
      if (token.starts_with('+')) {
        token.remove_prefix(1);
      }
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v.number);
      if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
          !std::isfinite(v.number)) {
        fail("invalid value '" + std::string(s_.substr(start, pos_ - start)) + "'");
      }
      v.integral = token.find_first_of(".eE") == std::string_view::npos;
    }
    return v;
  }

  std::string key() {
    skip_ws();
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                       s_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected a key");
    }
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!done() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) {
      ++pos_;
    }
  }

  void expect(char c) {
    skip_ws();
    if (!peek(c)) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool peek(char c) const { return !done() && s_[pos_] == c; }
  bool done() const { return pos_ >= s_.size(); }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

 private:
  std::string string() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (done()) {
        fail("unterminated string");
      }
      const char c = s_[pos_++];
      if (c == '"') {
        return out;
      }
      if (c == '\\') {
        if (done()) {
          fail("unterminated string");
        }
        const char e = s_[pos_++];
        switch (e) {
          case '"':
          case '\\':
            out.push_back(e);
            break;
          case 'n':
            out.push_back('\n');
            break;
          case 't':
            out.push_back('\t');
            break;
          default:
            fail(std::string("unsupported escape '\\") + e + "'");
        }
        continue;
      }
      out.push_back(c);
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::string_view strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

using Document = std::vector<std::pair<std::string, Value>>;  // dotted keys

Document parse_document(std::string_view text) {
  Document doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    LineParser p(strip_comment(line), line_no);
    p.skip_ws();
    if (p.done()) {
      continue;
    }
    if (p.peek('[')) {
      p.expect('[');
      section = p.key();
      p.expect(']');
      p.skip_ws();
      if (!p.done()) {
        p.fail("unexpected text after section header");
      }
      continue;
    }
    std::string key = p.key();
    p.expect('=');
    Value v = p.value();
    p.skip_ws();
    if (!p.done()) {
      p.fail("unexpected text after value");
    }
    if (!section.empty()) {
      key = section + "." + key;
    }
    for (const auto& entry : doc) {
      if (entry.first == key) {
        p.fail("duplicate key '" + key + "'");
      }
    }
    doc.emplace_back(std::move(key), std::move(v));
  }
  return doc;
}

// Typed access to one table (the document root, a section, or an inline
// table) with unknown-key detection.
class Record {
 public:
  Record(std::string prefix, const std::vector<std::pair<std::string, Value>>& fields)
      : prefix_(std::move(prefix)), fields_(fields), used_(fields.size(), false) {}

  const Value* find(std::string_view key) {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (fields_[i].first == key) {
        used_[i] = true;
        return &fields_[i].second;
      }
    }
    return nullptr;
  }

  const Value& require(std::string_view key) {
    const Value* v = find(key);
    if (!v) {
      throw ConfigError(field(key), "missing required field");
    }
    return *v;
  }

  double number(std::string_view key) { return as_number(require(key), key); }

  double number_or(std::string_view key, double fallback) {
    const Value* v = find(key);
    return v ? as_number(*v, key) : fallback;
  }

  double positive(std::string_view key) {
    const double x = number(key);
    if (!(x > 0.0)) {
      throw ConfigError(field(key), "must be > 0");
    }
    return x;
  }

  double nonnegative(std::string_view key) {
    const double x = number(key);
    if (!(x >= 0.0)) {
      throw ConfigError(field(key), "must be >= 0");
    }
    return x;
  }

  std::string text(std::string_view key) {
    const Value& v = require(key);
    check_type(v, Value::Type::String, key);
    return v.text;
  }

  std::vector<double> numbers(std::string_view key) {
    const Value& v = require(key);
    check_type(v, Value::Type::Array, key);
    std::vector<double> out;
    for (const Value& item : v.items) {
      out.push_back(as_number(item, key));
    }
    return out;
  }

  std::uint64_t integer_or(std::string_view key, std::uint64_t fallback, std::uint64_t minimum) {
    const Value* v = find(key);
    if (!v) {
      return fallback;
    }
    const double x = as_number(*v, key);
    if (!v->integral || x < static_cast<double>(minimum) || x > 9.007199254740992e15) {
      throw ConfigError(field(key), "must be an integer >= " + std::to_string(minimum));
    }
    return static_cast<std::uint64_t>(x);
  }

  bool boolean_or(std::string_view key, bool fallback) {
    const Value* v = find(key);
    if (!v) {
      return fallback;
    }
    check_type(*v, Value::Type::Boolean, key);
    return v->boolean;
  }

  void reject_unknown() const {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (!used_[i]) {
        throw ConfigError(field(fields_[i].first), "unknown field");
      }
    }
  }

  std::string field(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

  const std::string& prefix() const { return prefix_; }

 private:
  double as_number(const Value& v, std::string_view key) const {
    check_type(v, Value::Type::Number, key);
    return v.number;
  }

  void check_type(const Value& v, Value::Type type, std::string_view key) const {
    if (v.type != type) {
      throw ConfigError(field(key), std::string("expected a ") + type_name(type) + ", got a " +
                                        type_name(v.type));
    }
  }

  std::string prefix_;
  const std::vector<std::pair<std::string, Value>>& fields_;
  std::vector<bool> used_;
};

Record table_record(const Value& v, const std::string& name) {
  if (v.type != Value::Type::Table) {
    throw ConfigError(name, std::string("expected a table, got a ") + type_name(v.type));
  }
  return Record(name, v.fields);
}

ClaimDistribution parse_claim(const Value& v) {
  Record r = table_record(v, "claim");
  const std::string kind = r.text("kind");
  std::optional<ClaimDistribution> out;
  if (kind == "exponential") {
    out = ClaimDistribution::exponential(r.positive("mean"));
  } else if (kind == "gamma") {
    const double shape = r.positive("shape");
    out = ClaimDistribution::gamma(shape, r.positive("scale"));
  } else if (kind == "deterministic") {
    out = ClaimDistribution::deterministic(r.nonnegative("value"));
  } else {
    throw ConfigError("claim.kind",
                      "unknown kind '" + kind + "' (expected exponential, gamma, deterministic)");
  }
  r.reject_unknown();
  return *out;
}

std::variant<Intensity, MileageAffine> parse_counting(const Value& v, double horizon) {
  Record r = table_record(v, "counting");
  const std::string kind = r.text("kind");
  std::optional<std::variant<Intensity, MileageAffine>> out;
  if (kind == "constant") {
    out = Intensity::constant(r.nonnegative("rate"));
  } else if (kind == "piecewise") {
    std::vector<double> starts = r.numbers("starts");
    std::vector<double> rates = r.numbers("rates");
    try {
      out = Intensity::piecewise_constant(std::move(starts), std::move(rates));
    } catch (const ValidationError& e) {
      throw ConfigError("counting", e.what());
    }
  } else if (kind == "linear") {
    const double intercept = r.nonnegative("intercept");
    const double slope = r.number("slope");
    const double at_end = intercept + slope * horizon;
    if (!(at_end >= 0.0)) {
      throw ConfigError("counting.slope", "makes the rate negative before the horizon");
    }
    out = Intensity::function([intercept, slope](double t) { return intercept + slope * t; },
                              std::max(intercept, at_end));
  } else if (kind == "mileage_affine") {
    const double base = r.nonnegative("base_rate");
    out = MileageAffine{base, r.nonnegative("per_mile")};
  } else {
    throw ConfigError("counting.kind", "unknown kind '" + kind +
                                           "' (expected constant, piecewise, linear, "
                                           "mileage_affine)");
  }
  r.reject_unknown();
  return *out;
}

MileageModel load_trip_log_field(const std::string& file, const std::filesystem::path& base_dir,
                                 const std::string& field) {
  std::filesystem::path path(file);
  if (path.is_relative()) {
    path = base_dir / path;
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(field, "cannot open trip log '" + path.string() + "'");
  }
  try {
    return MileageModel::from_trip_log(ingest_trip_log(in));
  } catch (const ParseError& e) {
    throw ConfigError(field, path.string() + " " + e.what());
  }
}

MileageModel parse_mileage(const Value& v, const std::filesystem::path& base_dir) {
  if (v.type == Value::Type::String) {
    return load_trip_log_field(v.text, base_dir, "mileage");
  }
  Record r = table_record(v, "mileage");
  const std::string kind = r.text("kind");
  std::optional<MileageModel> out;
  if (kind == "constant_speed") {
    out = MileageModel::constant_speed(r.nonnegative("speed"));
  } else if (kind == "trip_log") {
    out = load_trip_log_field(r.text("path"), base_dir, "mileage.path");
  } else if (kind == "alternating_renewal") {
    const double drive = r.positive("mean_drive");
    const double idle = r.positive("mean_idle");
    out = MileageModel::alternating_renewal(drive, idle, r.nonnegative("speed"));
  } else {
    throw ConfigError("mileage.kind", "unknown kind '" + kind +
                                          "' (expected constant_speed, trip_log, "
                                          "alternating_renewal)");
  }
  r.reject_unknown();
  return *out;
}

}  // namespace

DcrmScenario ScenarioConfig::scenario() const {
  if (const auto* intensity = std::get_if<Intensity>(&counting)) {
    return DcrmScenario{claim, *intensity, delta, horizon};
  }
  if (!mileage) {
    throw ConfigError("mileage", "required for mileage_affine counting");
  }
  return DcrmScenario{claim, CoxCounting{std::get<MileageAffine>(counting), *mileage}, delta,
                      horizon};
}

PaydPolicy ScenarioConfig::policy() const {
  const auto* affine = std::get_if<MileageAffine>(&counting);
  if (!affine) {
    throw ConfigError("counting", "pricing needs kind = \"mileage_affine\"");
  }
  if (!mileage) {
    throw ConfigError("mileage", "pricing needs a mileage section");
  }
  return PaydPolicy{claim, *affine, *mileage, delta, horizon};
}

ScenarioConfig parse_scenario_config(std::string_view text,
                                     const std::filesystem::path& base_dir) {
  const Document doc = parse_document(text);

  // Split the flat dotted keys into the root and the [simulation] section.
  std::vector<std::pair<std::string, Value>> root;
  std::vector<std::pair<std::string, Value>> simulation;
  // [claim], [counting] and [mileage] sections become tables on the root.
  std::vector<std::string> sections;
  for (const auto& [key, value] : doc) {
    const std::size_t dot = key.find('.');
    if (key.starts_with("simulation.")) {
      simulation.emplace_back(key.substr(11), value);
    } else if (dot == std::string::npos) {
      root.emplace_back(key, value);
    } else {
      const std::string section = key.substr(0, dot);
      if (section != "claim" && section != "counting" && section != "mileage") {
        throw ConfigError(key, "unknown section");
      }
      auto it = std::find_if(root.begin(), root.end(),
                             [&](const auto& entry) { return entry.first == section; });
      if (it == root.end()) {
        Value table;
        table.type = Value::Type::Table;
        root.emplace_back(section, std::move(table));
        it = std::prev(root.end());
        sections.push_back(section);
      } else if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
        throw ConfigError(section, "given both as a value and as a section");
      }
      it->second.fields.emplace_back(key.substr(dot + 1), value);
    }
  }

  Record top("", root);
  const double horizon = top.positive("horizon");
  if (!std::isfinite(horizon)) {
    throw ConfigError("horizon", "must be finite");
  }
  const double delta = top.number_or("delta", 0.0);
  if (!(delta >= 0.0)) {
    throw ConfigError("delta", "must be >= 0");
  }
  ClaimDistribution claim = parse_claim(top.require("claim"));
  std::variant<Intensity, MileageAffine> counting = parse_counting(top.require("counting"), horizon);
  std::optional<MileageModel> mileage;
  if (const Value* m = top.find("mileage")) {
    mileage = parse_mileage(*m, base_dir);
  }
  top.reject_unknown();

  Record sim("simulation", simulation);
  SimulationSection section;
  section.paths = sim.integer_or("paths", section.paths, 1);
  section.seed = sim.integer_or("seed", section.seed, 0);
  section.full_trace = sim.boolean_or("full_trace", section.full_trace);
  sim.reject_unknown();

  ScenarioConfig config{std::move(claim), std::move(counting), std::move(mileage), delta, horizon,
                        section};
  if (std::holds_alternative<MileageAffine>(config.counting) && !config.mileage) {
    throw ConfigError("mileage", "required for mileage_affine counting");
  }
  return config;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read config '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_config(text.str(), path.parent_path());
}

}  // namespace dcrm
