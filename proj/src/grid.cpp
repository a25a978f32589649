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

#include "qbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbm {

void GridSpec::validate() const {
  if (nq < 16 || np < 16) throw std::invalid_argument("grid needs at least 16 points per axis");
  if (!(q_max > q_min) || !(p_max > p_min) || !std::isfinite(q_max - q_min) || !std::isfinite(p_max - p_min)) {
    throw std::invalid_argument("grid extents must be finite and strictly ordered");
  }
}

PhaseSpaceGrid::PhaseSpaceGrid(const GridSpec& spec) : spec_(spec) {
  spec_.validate();
  values_.assign(spec_.nq * spec_.np, 0.0);
}

PhaseSpaceGrid PhaseSpaceGrid::sample(const GridSpec& spec, const std::function<double(double, double)>& field) {
  PhaseSpaceGrid grid(spec);
  for (std::size_t i = 0; i < spec.nq; ++i) {
    const double q = spec.q(i);
    for (std::size_t j = 0; j < spec.np; ++j) grid(i, j) = field(q, spec.p(j));
  }
  return grid;
}

namespace {

double trapezoid_weight(std::size_t k, std::size_t n) { return (k == 0 || k + 1 == n) ? 0.5 : 1.0; }

}  // namespace

double PhaseSpaceGrid::integral() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < spec_.nq; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < spec_.np; ++j) row += trapezoid_weight(j, spec_.np) * (*this)(i, j);
    sum += trapezoid_weight(i, spec_.nq) * row;
  }
  return sum * spec_.dq() * spec_.dp();
}

double PhaseSpaceGrid::cell_sum() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * spec_.dq() * spec_.dp();
}

void PhaseSpaceGrid::normalize() {
  const double mass = integral();
  if (!(std::abs(mass) > 0.0) || !std::isfinite(mass)) throw std::domain_error("cannot normalize grid with zero mass");
  for (double& v : values_) v /= mass;
}

GridMoments PhaseSpaceGrid::moments() const {
  GridMoments m;
  const auto weight = [this](std::size_t i, std::size_t j) {
    return trapezoid_weight(i, spec_.nq) * trapezoid_weight(j, spec_.np) * (*this)(i, j);
  };
  double sq = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < spec_.nq; ++i) {
    for (std::size_t j = 0; j < spec_.np; ++j) {
      const double w = weight(i, j);
      m.mass += w;
      sq += w * spec_.q(i);
      sp += w * spec_.p(j);
    }
  }
  m.mean_q = sq / m.mass;
  m.mean_p = sp / m.mass;
  double sqq = 0.0, spp = 0.0, sqp = 0.0;
  for (std::size_t i = 0; i < spec_.nq; ++i) {
    const double dq = spec_.q(i) - m.mean_q;
    for (std::size_t j = 0; j < spec_.np; ++j) {
      const double dp = spec_.p(j) - m.mean_p;
      const double w = weight(i, j);
      sqq += w * dq * dq;
      spp += w * dp * dp;
      sqp += w * dq * dp;
    }
  }
  m.var_q = sqq / m.mass;
  m.var_p = spp / m.mass;
  m.cov_qp = sqp / m.mass;
  m.mass *= spec_.dq() * spec_.dp();
  return m;
}

double PhaseSpaceGrid::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double PhaseSpaceGrid::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

}  // namespace qbm
