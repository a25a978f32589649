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

#include "qbm/densmat.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbm {

using cplx = std::complex<double>;
using std::numbers::pi;

cplx rho_kernel(double x, double x_prime, const SecondMoments& a, double hbar) {
  const double diff = x - x_prime;
  const double sum = x + x_prime;
  const double re = -(4.0 / (hbar * hbar) * a.det * diff * diff + sum * sum) / (8.0 * a.a11);
  const double im = a.a12 * (x * x - x_prime * x_prime) / (2.0 * hbar * a.a11);
  return std::exp(cplx(re, im)) / std::sqrt(2.0 * pi * a.a11);
}

cplx rho_element_gaussian(double x, double x_prime, double t, const SimParams& params,
                          const GaussianInit& init) {
  const SecondMoments a = second_moments(t, params, init);
  const PhasePoint c = mean_trajectory(t, params, init.x0);
  const double phase = c.p * (x - x_prime) / params.hbar;
  return std::exp(cplx(0.0, phase)) * rho_kernel(x - c.q, x_prime - c.q, a, params.hbar);
}

cplx rho_element_cat(double x, double x_prime, double t, const SimParams& params, const CatInit& init) {
  init.validate();
  const MomentDecomposition md = decompose_moments(t, params, init.sigma, init.prep);
  const SecondMoments a = md.moments(init.prep);
  const double hbar = params.hbar;
  const double s2 = init.sigma * init.sigma;
  const double half_d = 0.5 * init.d;
  // G = v1, m Gdot = u1, m^2 Gddot = u2
  const double k = hbar * hbar * (md.u1 * a.a11 - md.v1 * a.a12) / (4.0 * s2 * a.det);
  const double l = md.u2 / hbar;
  const double mm = hbar * (md.u1 * a.a12 - md.v1 * a.a22) / (4.0 * s2 * a.det);
  const double shift = md.u1 * half_d;
  const double weight = std::exp(-interference_measure(t, params, init).a_of_t);
  const double diff = x - x_prime;
  const double sum = x + x_prime;

  const cplx direct = std::exp(cplx(0.0, l * half_d * diff)) * rho_kernel(x - shift, x_prime - shift, a, hbar) +
                      std::exp(cplx(0.0, -l * half_d * diff)) * rho_kernel(x + shift, x_prime + shift, a, hbar);
  const cplx coherence =
      std::exp(cplx(0.0, mm * half_d * sum)) * rho_kernel(x - k * half_d, x_prime + k * half_d, a, hbar) +
      std::exp(cplx(0.0, -mm * half_d * sum)) * rho_kernel(x + k * half_d, x_prime - k * half_d, a, hbar);
  return 0.5 * init.norm() * (direct + weight * coherence);
}

DensityMatrixSample rho_sample(double x, double x_prime, double t, const SimParams& params,
                               const StateInit& state) {
  const cplx value = std::visit(
      [&](const auto& s) -> cplx {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianInit>) {
          return rho_element_gaussian(x, x_prime, t, params, s);
        } else {
          return rho_element_cat(x, x_prime, t, params, s);
        }
      },
      state);
  return DensityMatrixSample{x, x_prime, value};
}

double purity(double t, const SimParams& params, const StateInit& state) {
  const auto* packet = std::get_if<GaussianInit>(&state);
  if (packet == nullptr) {
    throw std::invalid_argument("closed-form purity covers single packets only; "
                                "use purity_quadrature or density_matrix_spectrum for cat states");
  }
  const SecondMoments a = second_moments(t, params, *packet);
  return params.hbar / (2.0 * std::sqrt(a.det));
}

double purity_shorttime(double t, const SimParams& params, double sigma) {
  params.validate();
  detail::require_time(t);
  detail::require_positive(sigma, "sigma");
  const double lam = params.thermal_wavelength();
  return 1.0 + (1.0 - 4.0 * sigma * sigma / (lam * lam)) * params.gamma * t;
}

cplx witness_state(double x, const SimParams& params, double sigma) {
  params.validate();
  detail::require_positive(sigma, "sigma");
  const double s2 = sigma * sigma;
  const cplx exponent(-x * x / (4.0 * s2), -params.m * params.gamma * x * x / (2.0 * params.hbar));
  return x / (sigma * std::pow(2.0 * pi * s2, 0.25)) * std::exp(exponent);
}

double negativity_witness(double t, const SimParams& params, double sigma, Prep prep) {
  const SecondMoments a = second_moments(t, params, sigma, prep);
  const double h2 = params.hbar * params.hbar;
  const double s2 = sigma * sigma;
  const double mixedness = 4.0 * a.det / h2;
  const double tilt = a.a12 + params.m * params.gamma * a.a11;
  const double denom = (1.0 + a.a11 / s2) * (1.0 + 4.0 * s2 * a.det / (h2 * a.a11)) +
                       4.0 * s2 * tilt * tilt / (h2 * a.a11);
  return -2.0 * (1.0 - mixedness) / std::pow(denom, 1.5);
}

DiscreteSpectrum density_matrix_spectrum(double t, const SimParams& params, const StateInit& state,
                                         std::size_t n) {
  if (n < 2) throw std::invalid_argument("spectrum grid needs at least 2 points");
  const double sigma = state_sigma(state);
  const SecondMoments a = second_moments(t, params, sigma, state_prep(state));
  const double offset = std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianInit>) {
          return std::abs(s.x0);
        } else {
          return 0.5 * s.d;
        }
      },
      state);
  const double half = offset + 8.0 * std::max(sigma, std::sqrt(a.a11));
  const double step = 2.0 * half / static_cast<double>(n - 1);

  Eigen::MatrixXcd kernel(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -half + step * static_cast<double>(i);
    for (std::size_t j = 0; j <= i; ++j) {
      const double xp = -half + step * static_cast<double>(j);
      const cplx v = rho_sample(x, xp, t, params, state).value;
      const cplx vt = rho_sample(xp, x, t, params, state).value;
      const cplx sym = 0.5 * (v + std::conj(vt)) * step;
      kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sym;
      kernel(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(sym);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(kernel, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("density-matrix eigensolver failed");

  DiscreteSpectrum out;
  out.step = step;
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  for (double ev : out.eigenvalues) {
    out.trace += ev;
    out.purity += ev * ev;
  }
  out.min_eigenvalue = out.eigenvalues.back();
  return out;
}

}  // namespace qbm
