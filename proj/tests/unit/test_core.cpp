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
#include <limits>
#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "qbm/core.hpp"

using namespace qbm;
using qbm::testing::rel_err;
using qbm::testing::simpson;

TEST_CASE("green function and its derivatives") {
  const SimParams p{2.0, 0.7, 3.0, 1.3};
  for (double t : {1e-9, 1e-4, 0.3, 1.0, 7.5, 60.0}) {
    const GreenEval g = green_function(t, p);
    const double e = std::exp(-p.gamma * t);
    CHECK(g.g == doctest::Approx((1.0 - e) / (p.m * p.gamma)).epsilon(1e-12));
    CHECK(g.gdot == doctest::Approx(e / p.m).epsilon(1e-14));
    CHECK(g.gddot == doctest::Approx(-p.gamma * e / p.m).epsilon(1e-14));
  }
  // derivative chain by central differences
  const double t = 0.8;
  const double h = 1e-5;
  const GreenEval lo = green_function(t - h, p);
  const GreenEval hi = green_function(t + h, p);
  const GreenEval mid = green_function(t, p);
  CHECK((hi.g - lo.g) / (2 * h) == doctest::Approx(mid.gdot).epsilon(1e-8));
  CHECK((hi.gdot - lo.gdot) / (2 * h) == doctest::Approx(mid.gddot).epsilon(1e-8));

  const GreenEval zero = green_function(0.0, p);
  CHECK(zero.g == 0.0);
  CHECK(zero.gdot == doctest::Approx(1.0 / p.m));
}

TEST_CASE("green function keeps relative precision at tiny times") {
  const SimParams p = figure_params();
  const double t = 1e-12;
  CHECK(rel_err(green_function(t, p).g, t - 0.5 * t * t) < 1e-15);
}

TEST_CASE("fluctuation moments against high-precision quadrature") {
  // 50-digit quadrature of 2 m gamma kT times the integrals of G^2, 2 G Gdot and Gdot^2
  struct Row {
    double t, x2, xxd, xd2;
  };
  const Row rows[] = {
      {1e-3, 3.3308344995834563e-9, 9.9900058308341942e-6, 0.0099900066633346662},
      {0.5, 0.29121598839545686, 1.5481812174617547, 3.1606027941427884},
      {1.0, 1.680912407245783, 3.9957640089372805, 4.3233235838169365},
      {10.0, 85.000907988289482, 9.9990920220162865, 4.9999999896942319},
  };
  const SimParams p = figure_params();
  for (const Row& r : rows) {
    CAPTURE(r.t);
    const FluctuationMoments f = fluctuation_moments(r.t, p);
    CHECK(rel_err(f.x2, r.x2) < 1e-13);
    CHECK(rel_err(f.xxd, r.xxd) < 1e-13);
    CHECK(rel_err(f.xd2, r.xd2) < 1e-13);
  }
}

TEST_CASE("fluctuation moments match white-noise integrals for other parameters") {
  const SimParams p{1.7, 0.4, 2.2, 0.9};
  const double c = 2.0 * p.m * p.gamma * p.kT;
  for (double t : {0.05, 1.3, 4.0}) {
    const FluctuationMoments f = fluctuation_moments(t, p);
    const auto g = [&](double s) { return green_function(s, p); };
    CHECK(rel_err(f.x2, c * simpson([&](double s) { return g(s).g * g(s).g; }, 0, t, 2000)) < 1e-10);
    CHECK(rel_err(f.xxd, 2 * c * simpson([&](double s) { return g(s).g * g(s).gdot; }, 0, t, 2000)) < 1e-10);
    CHECK(rel_err(f.xd2, c * simpson([&](double s) { return g(s).gdot * g(s).gdot; }, 0, t, 2000)) < 1e-10);
  }
}

TEST_CASE("ramp integral is continuous across the series switch") {
  for (double u : {1.0 - 1e-12, 1.0, 1.0 + 1e-12}) {
    const double w = -std::expm1(-u);
    CHECK(rel_err(ramp_integral(u), 2 * u - w * (2 + w)) < 1e-13);
  }
  CHECK(ramp_integral(0.0) == 0.0);
  // leading term 2u^3/3
  CHECK(rel_err(ramp_integral(1e-6), 2.0 / 3.0 * 1e-18) < 1e-5);
  CHECK(one_minus_exp(1e-20) == doctest::Approx(1e-20).epsilon(1e-15));
}

TEST_CASE("moments start at zero and equipartition at long times") {
  const SimParams p = figure_params();
  const FluctuationMoments zero = fluctuation_moments(0.0, p);
  CHECK(zero.x2 == 0.0);
  CHECK(zero.xxd == 0.0);
  CHECK(zero.xd2 == 0.0);
  const FluctuationMoments late = fluctuation_moments(60.0, p);
  CHECK(rel_err(late.xd2, p.kT / p.m) < 1e-12);
  CHECK(rel_err(late.xxd, 2 * p.kT / (p.m * p.gamma)) < 1e-12);
}

TEST_CASE("x2 is increasing and convex") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  for (int k = 0; k < 50; ++k) {
    const SimParams p{pos(rng), pos(rng), pos(rng), pos(rng)};
    double prev = 0.0;
    double prev_slope = 0.0;
    for (double t = 0.05; t < 6.0; t += 0.05) {
      const FluctuationMoments f = fluctuation_moments(t, p);
      CHECK(f.x2 > prev);
      CHECK(f.xxd >= prev_slope);
      prev = f.x2;
      prev_slope = f.xxd;
    }
  }
}

TEST_CASE("thermal wavelength and decoherence time") {
  const SimParams p = figure_params();
  CHECK(thermal_wavelength(p) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(p.thermal_wavelength() == thermal_wavelength(p));
  const double lam = thermal_wavelength(p);
  CHECK(decoherence_time(p, 10 * lam) == doctest::Approx(0.01).epsilon(1e-14));
  const SimParams q{2.0, 3.0, 0.5, 1.0};
  CHECK(decoherence_time(q, 2.0) == doctest::Approx(q.hbar * q.hbar / (q.m * q.kT) / (4.0 * q.gamma)));
}

TEST_CASE("invalid parameters are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(SimParams({0.0, 1.0, 1.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SimParams({1.0, -1.0, 1.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SimParams({1.0, 1.0, nan, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SimParams({1.0, 1.0, 1.0, 0.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(green_function(-1e-3, figure_params()), std::invalid_argument);
  CHECK_THROWS_AS(fluctuation_moments(nan, figure_params()), std::invalid_argument);
  CHECK_THROWS_AS(decoherence_time(figure_params(), 0.0), std::invalid_argument);
}
