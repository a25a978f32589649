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
#include <string>
#include <vector>

#include "qbm/core.hpp"

namespace qbm {

struct CheckResult {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct ValidationSettings {
  SimParams params = figure_params();
  double sigma = 0.0;  ///< 0: a quarter thermal wavelength
  double d = 0.0;      ///< 0: ten thermal wavelengths
  double x0 = 1.0;     ///< single-packet centre used by the transform and FP checks
  std::size_t fp_grid = 256;

  double resolved_sigma() const;
  double resolved_d() const;
};

// One group per acceptance criterion. A check that throws is reported as
// failed with an infinite error and the exception text as its note.
std::vector<CheckResult> check_purity_curve(const ValidationSettings& s);
std::vector<CheckResult> check_interference_curve(const ValidationSettings& s);
std::vector<CheckResult> check_transforms(const ValidationSettings& s);
std::vector<CheckResult> check_purity_biconditional(const ValidationSettings& s);
std::vector<CheckResult> check_coefficients(const ValidationSettings& s);
std::vector<CheckResult> check_fokker_planck(const ValidationSettings& s);
std::vector<CheckResult> check_decoherence(const ValidationSettings& s);
std::vector<CheckResult> check_limits(const ValidationSettings& s);

struct CheckGroup {
  std::string name;
  std::vector<CheckResult> (*run)(const ValidationSettings&);
};

/// The eight groups in acceptance order; the Fokker-Planck group is named "fp".
const std::vector<CheckGroup>& check_groups();

}  // namespace qbm
