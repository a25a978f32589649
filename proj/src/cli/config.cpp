// Copyright 2026 The qbm Authors
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

#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <system_error>

#include "qbm/cli.hpp"

namespace qbm::cli {

double ScenarioConfig::resolved_sigma() const { return sigma.value_or(0.25 * params.thermal_wavelength()); }

double ScenarioConfig::resolved_d() const { return d.value_or(10.0 * params.thermal_wavelength()); }

GaussianInit ScenarioConfig::packet() const { return GaussianInit{x0, resolved_sigma(), prep}; }

CatInit ScenarioConfig::cat() const { return CatInit{resolved_d(), resolved_sigma(), prep}; }

StateInit ScenarioConfig::state_init() const {
  if (state == StateKind::Cat) return cat();
  return packet();
}

std::vector<double> ScenarioConfig::times(double default_t0, double default_t1, std::size_t default_n) const {
  const double a = t0.value_or(default_t0);
  const double b = t1.value_or(default_t1);
  const std::size_t count = n.value_or(default_n);
  if (count < 2) throw UsageError("n must be at least 2");
  if (!(a >= 0.0)) throw UsageError("t0 must be non-negative");
  if (!(b > a) || !std::isfinite(b)) throw UsageError("t1 must be finite and greater than t0");
  std::vector<double> out(count);
  const double last = static_cast<double>(count - 1);
  if (spacing == Spacing::Log) {
    if (!(a > 0.0)) throw UsageError("log spacing needs t0 > 0");
    const double ratio = std::log(b / a);
    for (std::size_t i = 0; i < count; ++i) out[i] = a * std::exp(ratio * static_cast<double>(i) / last);
  } else {
    for (std::size_t i = 0; i < count; ++i) out[i] = a + (b - a) * static_cast<double>(i) / last;
  }
  out.back() = b;
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw UsageError("invalid number for " + key + ": '" + value + "'");
  }
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw UsageError("invalid count for " + key + ": '" + value + "'");
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw UsageError("config line " + std::to_string(number) + ": empty key or value");
    }
    out[key] = value;
  }
  return out;
}

void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "m") {
    c.params.m = parse_double(key, value);
  } else if (key == "gamma") {
    c.params.gamma = parse_double(key, value);
  } else if (key == "kT") {
    c.params.kT = parse_double(key, value);
  } else if (key == "hbar") {
    c.params.hbar = parse_double(key, value);
  } else if (key == "sigma") {
    c.sigma = parse_double(key, value);
  } else if (key == "d") {
    c.d = parse_double(key, value);
  } else if (key == "x0") {
    c.x0 = parse_double(key, value);
  } else if (key == "t0") {
    c.t0 = parse_double(key, value);
  } else if (key == "t1") {
    c.t1 = parse_double(key, value);
  } else if (key == "n") {
    c.n = parse_count(key, value);
  } else if (key == "fp-grid") {
    c.fp_grid = parse_count(key, value);
  } else if (key == "prep") {
    if (value == "zero") {
      c.prep = Prep::ZeroTemp;
    } else if (value == "bath") {
      c.prep = Prep::BathTemp;
    } else {
      throw UsageError("prep must be zero or bath, got '" + value + "'");
    }
  } else if (key == "state") {
    if (value == "gaussian") {
      c.state = StateKind::Gaussian;
    } else if (value == "cat") {
      c.state = StateKind::Cat;
    } else {
      throw UsageError("state must be gaussian or cat, got '" + value + "'");
    }
  } else if (key == "spacing") {
    if (value == "linear") {
      c.spacing = Spacing::Linear;
    } else if (value == "log") {
      c.spacing = Spacing::Log;
    } else {
      throw UsageError("spacing must be linear or log, got '" + value + "'");
    }
  } else if (key == "out") {
    c.out = value;
  } else if (key == "skip") {
    std::istringstream groups(value);
    for (std::string g; std::getline(groups, g, ',');) {
      if (!g.empty()) c.skip.push_back(g);
    }
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

}  // namespace qbm::cli
