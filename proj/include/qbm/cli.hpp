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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbm/cat.hpp"
#include "qbm/core.hpp"
#include "qbm/gaussian.hpp"

namespace qbm::cli {

/// Bad flag, bad config file or inconsistent scenario (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StateKind { Gaussian, Cat };
enum class Spacing { Linear, Log };

struct ScenarioConfig {
  SimParams params = figure_params();
  StateKind state = StateKind::Gaussian;
  double x0 = 0.0;
  std::optional<double> d;      ///< default 10 thermal wavelengths
  std::optional<double> sigma;  ///< default a quarter thermal wavelength
  Prep prep = Prep::ZeroTemp;
  std::optional<double> t0;
  std::optional<double> t1;
  std::optional<std::size_t> n;
  Spacing spacing = Spacing::Linear;
  std::string out;  ///< empty: standard output

  // validate only
  std::size_t fp_grid = 256;
  std::vector<std::string> skip;

  double resolved_sigma() const;
  double resolved_d() const;
  StateInit state_init() const;
  GaussianInit packet() const;
  CatInit cat() const;

  /// Fills unset time-grid fields, then checks n >= 2, t0 >= 0, t1 > t0 (and t0 > 0 for log spacing).
  std::vector<double> times(double default_t0, double default_t1, std::size_t default_n) const;
};

/// Parses `key = value` lines; `#` starts a comment. Throws UsageError with the line number.
std::map<std::string, std::string> parse_config_text(std::istream& in);

/// Applies one setting by its config-file key (same names as the long flags). Throws UsageError.
void apply_setting(ScenarioConfig& config, const std::string& key, const std::string& value);

/// Shortest round-trip decimal.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out) const;
};

CsvTable fig1_table(const ScenarioConfig& config);
CsvTable fig2_table(const ScenarioConfig& config);

const std::vector<std::string>& scan_quantities();

/// Throws UsageError for an unknown quantity.
CsvTable scan_table(const ScenarioConfig& config, const std::string& quantity);

/**
 * @brief Entry point shared by the qbm executable and the tests.
 *
 * args excludes the program name. Returns 0 on success, 1 on a usage or
 * configuration error and 2 on a numerical failure (including failed
 * validation checks).
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbm::cli
