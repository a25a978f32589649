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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbm/grid.hpp"

using namespace qbm;

namespace {

GridSpec square(double half, std::size_t n) { return GridSpec{-half, half, -half, half, n, n}; }

}  // namespace

TEST_CASE("grid spec validation") {
  CHECK_NOTHROW(square(1.0, 16).validate());
  CHECK_THROWS_AS(square(1.0, 15).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({1.0, -1.0, -1.0, 1.0, 32, 32}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({-1.0, 1.0, 2.0, 2.0, 32, 32}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(PhaseSpaceGrid(square(1.0, 8)), std::invalid_argument);
}

TEST_CASE("node coordinates") {
  const GridSpec g{-1.0, 3.0, 0.0, 2.0, 17, 33};
  CHECK(g.dq() == 0.25);
  CHECK(g.dp() == 0.0625);
  CHECK(g.q(0) == -1.0);
  CHECK(g.q(16) == 3.0);
  CHECK(g.p(32) == 2.0);
}

TEST_CASE("row-major storage, q slow") {
  PhaseSpaceGrid w(GridSpec{0.0, 1.0, 0.0, 1.0, 16, 20});
  w(2, 3) = 5.0;
  CHECK(w.values()[2 * 20 + 3] == 5.0);
  CHECK(w.max_value() == 5.0);
  CHECK(w.min_value() == 0.0);
}

TEST_CASE("integrals and moments of a sampled Gaussian") {
  const double mq = 0.3, mp = -0.2, sq = 0.5, sp = 0.8, rho = 0.4;
  const auto field = [&](double q, double p) {
    const double a = (q - mq) / sq, b = (p - mp) / sp;
    return std::exp(-(a * a - 2 * rho * a * b + b * b) / (2 * (1 - rho * rho))) /
           (2 * std::numbers::pi * sq * sp * std::sqrt(1 - rho * rho));
  };
  PhaseSpaceGrid w = PhaseSpaceGrid::sample(square(8.0, 257), field);
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(w.cell_sum() == doctest::Approx(1.0).epsilon(1e-10));
  const GridMoments m = w.moments();
  CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m.mean_q == doctest::Approx(mq).epsilon(1e-10));
  CHECK(m.mean_p == doctest::Approx(mp).epsilon(1e-10));
  CHECK(m.var_q == doctest::Approx(sq * sq).epsilon(1e-9));
  CHECK(m.var_p == doctest::Approx(sp * sp).epsilon(1e-9));
  CHECK(m.cov_qp == doctest::Approx(rho * sq * sp).epsilon(1e-9));
}

TEST_CASE("normalize") {
  PhaseSpaceGrid w = PhaseSpaceGrid::sample(square(1.0, 16), [](double, double) { return 3.0; });
  CHECK(w.integral() == doctest::Approx(12.0));
  w.normalize();
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-14));
  PhaseSpaceGrid zero(square(1.0, 16));
  CHECK_THROWS_AS(zero.normalize(), std::domain_error);
}
