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
#include <functional>
#include <span>
#include <vector>

namespace qbm {

/// Uniform rectangular (q, p) grid, endpoints included.
struct GridSpec {
  double q_min = -1.0;
  double q_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;
  std::size_t nq = 64;
  std::size_t np = 64;

  /// Throws std::invalid_argument unless nq, np >= 16 and the extents are ordered.
  void validate() const;

  double dq() const { return (q_max - q_min) / static_cast<double>(nq - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }
  double q(std::size_t i) const { return q_min + dq() * static_cast<double>(i); }
  double p(std::size_t j) const { return p_min + dp() * static_cast<double>(j); }
};

struct GridMoments {
  double mass = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double cov_qp = 0.0;
};

/// Real field sampled on a GridSpec, stored row-major with q as the slow index.
class PhaseSpaceGrid {
 public:
  explicit PhaseSpaceGrid(const GridSpec& spec);

  static PhaseSpaceGrid sample(const GridSpec& spec, const std::function<double(double, double)>& field);

  const GridSpec& spec() const { return spec_; }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * spec_.np + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * spec_.np + j]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Trapezoidal double integral.
  double integral() const;

  /// Plain cell sum times dq*dp; the quantity a zero-flux finite-volume scheme conserves.
  double cell_sum() const;

  /// Rescales so that integral() == 1. Throws std::domain_error on a zero or non-finite integral.
  void normalize();

  /// Mass and normalized first/second central moments (trapezoidal).
  GridMoments moments() const;

  double max_value() const;
  double min_value() const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

}  // namespace qbm
