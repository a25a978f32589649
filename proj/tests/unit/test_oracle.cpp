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
#include <complex>
#include <numbers>
#include <stdexcept>

#include "helpers.hpp"
#include "qbm/densmat.hpp"
#include "qbm/oracle.hpp"

using namespace qbm;
using namespace qbm::testing;

namespace {

const SimParams kP1 = figure_params();
const double kLam = kP1.thermal_wavelength();

GridSpec window(double qc, double pc, double qh, double ph, std::size_t n) {
  return GridSpec{qc - qh, qc + qh, pc - ph, pc + ph, n, n};
}

}  // namespace

TEST_CASE("quadrature Wigner function of a single packet") {
  const GaussianInit g{1.0, kLam / 4, Prep::ZeroTemp};
  const double t = 1.0;
  const SecondMoments a = second_moments(t, kP1, g);
  const PhasePoint c = mean_trajectory(t, kP1, g.x0);
  const StateInit s = g;
  const WignerTransform w = char_to_wigner(char_sampler(t, kP1, s), char_box(t, kP1, s),
                                           window(c.q, c.p, 5 * std::sqrt(a.a11), 5 * std::sqrt(a.a22), 24), kP1.hbar);
  CHECK(w.imag_residue <= 1e-10);
  CHECK(w.error_estimate <= 1e-9);
  const GridSpec& spec = w.grid.spec();
  for (std::size_t i = 0; i < spec.nq; ++i) {
    for (std::size_t j = 0; j < spec.np; ++j) {
      CHECK(std::abs(w.grid(i, j) - wigner_gaussian(spec.q(i), spec.p(j), t, kP1, g)) <= 1e-8);
    }
  }
}

TEST_CASE("quadrature Wigner function of a cat at t = 0 has the 2:1 peak ratio") {
  const CatInit cat{10 * kLam, kLam / 4, Prep::ZeroTemp};
  const StateInit s = cat;
  const double peak_p = -kP1.m * kP1.gamma * cat.d / 2;
  // 17 nodes across [-d/2, d/2] put the origin and the packet centre on the grid
  const GridSpec target{-cat.d / 2, cat.d / 2, peak_p, -peak_p, 17, 17};
  const WignerTransform w = char_to_wigner(char_sampler(0.0, kP1, s), char_box(0.0, kP1, s), target, kP1.hbar);
  CHECK(w.grid(8, 8) / w.grid(16, 0) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("flat characteristic function concentrates at the origin") {
  const CharSampler flat = [](double, double) { return std::complex<double>(1.0, 0.0); };
  QuadratureOptions opts;
  opts.check_convergence = false;
  double prev = 0.0;
  for (double box : {2.0, 4.0, 8.0}) {
    const WignerTransform w = char_to_wigner(flat, QuadratureBox{box, box}, window(0, 0, 1, 1, 17), 1.0, opts);
    const double centre = w.grid(8, 8);
    CHECK(centre == doctest::Approx(std::pow(box / std::numbers::pi, 2)).epsilon(1e-12));
    CHECK(centre > prev);
    prev = centre;
  }
}

TEST_CASE("non-convergence is reported") {
  const GaussianInit g{0.0, kLam / 4, Prep::ZeroTemp};
  const StateInit s = g;
  QuadratureOptions coarse;
  coarse.nodes = 16;
  QuadratureBox wide = char_box(0.5, kP1, s);
  wide.q_half *= 4;
  wide.p_half *= 4;
  CHECK_THROWS_AS(char_to_wigner(char_sampler(0.5, kP1, s), wide, window(0, 0, 1, 1, 16), kP1.hbar, coarse),
                  NumericalError);
  CHECK_THROWS_AS(purity_quadrature(char_sampler(0.5, kP1, s), wide, kP1.hbar, coarse), NumericalError);
  coarse.nodes = 4;
  CHECK_THROWS_AS(purity_quadrature(char_sampler(0.5, kP1, s), wide, kP1.hbar, coarse), std::invalid_argument);
}

TEST_CASE("purity quadrature") {
  const double sigma = kLam / 4;
  for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
    const StateInit g = GaussianInit{0.3, sigma, prep};
    for (double t : {0.0, 0.03, 0.5, 2.0}) {
      const QuadratureValue v = purity_quadrature(char_sampler(t, kP1, g), char_box(t, kP1, g), kP1.hbar);
      CHECK(rel_err(v.value, purity(t, kP1, g)) < 1e-6);
    }
  }
  const StateInit zero = GaussianInit{0.0, sigma, Prep::ZeroTemp};
  CHECK(purity_quadrature(char_sampler(0, kP1, zero), char_box(0, kP1, zero), kP1.hbar).value ==
        doctest::Approx(1.0).epsilon(1e-8));
  const StateInit cat = CatInit{3 * kLam, sigma, Prep::ZeroTemp};
  CHECK(purity_quadrature(char_sampler(0, kP1, cat), char_box(0, kP1, cat), kP1.hbar).value ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("density matrix quadrature") {
  const double sigma = kLam / 4;
  for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
    const GaussianInit g{0.0, sigma, prep};
    const CatInit c{4 * kLam, sigma, prep};
    const StateInit sg = g, sc = c;
    for (double t : {0.0, 0.05, 1.0}) {
      const auto fg = char_sampler(t, kP1, sg);
      const auto fc = char_sampler(t, kP1, sc);
      const double pg = char_box(t, kP1, sg).p_half;
      const double pc = char_box(t, kP1, sc).p_half;
      for (double x : {-1.1, -0.2, 0.4}) {
        for (double xp : {-0.5, 0.0, 0.9}) {
          CHECK(std::abs(rho_quadrature(fg, x, xp, pg, kP1.hbar).value - rho_element_gaussian(x, xp, t, kP1, g)) <
                1e-7);
          CHECK(std::abs(rho_quadrature(fc, x, xp, pc, kP1.hbar).value - rho_element_cat(x, xp, t, kP1, c)) < 1e-7);
        }
      }
      // trace from the diagonal
      const SecondMoments a = second_moments(t, kP1, sigma, prep);
      const double half = 10 * std::sqrt(a.a11) + c.d;
      const double trace =
          simpson([&](double x) { return rho_quadrature(fc, x, x, pc, kP1.hbar).value.real(); }, -half, half, 600);
      CHECK(trace == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("extracted coefficients") {
  for (double t : linspace(0.01, 5.0, 25)) {
    const ExtractedCoefficients c = extract_coefficients(t, kP1, {kLam, 2 * kLam});
    CHECK(std::abs(c.gamma_coeff - 0.5) < 1e-6);
    CHECK(std::abs(c.omega2) < 1e-6);
    CHECK(std::abs(c.d_pp - 5.0) < 1e-6);
    CHECK(std::abs(c.d_qp) < 1e-6);
    const ExtractedCoefficients other = extract_coefficients(t, kP1, {0.1 * kLam, 7 * kLam});
    CHECK(std::abs(other.d_pp - c.d_pp) < 1e-6);
  }
  const SimParams p{2.0, 0.3, 1.5, 0.7};
  const ExtractedCoefficients c = extract_coefficients(1.0, p, {0.2, 0.5});
  CHECK(c.gamma_coeff == doctest::Approx(0.15).epsilon(1e-10));
  CHECK(c.d_pp == doctest::Approx(p.m * p.gamma * p.kT).epsilon(1e-10));
  CHECK_THROWS_AS(extract_coefficients(-1.0, kP1, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("drift from finite differences of the mean flow") {
  const SimParams p{1.4, 0.6, 2.0, 1.0};
  const double t = 0.7, h = 1e-5, x0 = 1.3;
  const PhasePoint lo = mean_trajectory(t - h, p, x0);
  const PhasePoint hi = mean_trajectory(t + h, p, x0);
  const PhasePoint mid = mean_trajectory(t, p, x0);
  // qdot = p/m and pdot = -2 Gamma p - m Omega^2 q
  CHECK((hi.q - lo.q) / (2 * h) == doctest::Approx(mid.p / p.m).epsilon(1e-8));
  CHECK((hi.p - lo.p) / (2 * h) == doctest::Approx(-2 * (p.gamma / 2) * mid.p).epsilon(1e-8));
  const Matrix2 f = drift_matrix(t, p);
  CHECK(f[0][0] == doctest::Approx(0.0));
  CHECK(f[0][1] == doctest::Approx(1 / p.m));
  CHECK(f[1][0] == doctest::Approx(0.0));
  CHECK(f[1][1] == doctest::Approx(-p.gamma));
}

TEST_CASE("covariance rate matches finite differences") {
  const SimParams p{1.4, 0.6, 2.0, 1.0};
  const double sigma = 0.3, t = 0.9, h = 1e-5;
  for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
    const CovarianceFlow flow = covariance_flow(t, p, sigma, prep);
    const SecondMoments lo = second_moments(t - h, p, sigma, prep);
    const SecondMoments hi = second_moments(t + h, p, sigma, prep);
    CHECK(flow.rate[0][0] == doctest::Approx((hi.a11 - lo.a11) / (2 * h)).epsilon(1e-7));
    CHECK(flow.rate[0][1] == doctest::Approx((hi.a12 - lo.a12) / (2 * h)).epsilon(1e-7));
    CHECK(flow.rate[1][0] == flow.rate[0][1]);
    CHECK(flow.rate[1][1] == doctest::Approx((hi.a22 - lo.a22) / (2 * h)).epsilon(1e-7));
  }
}
