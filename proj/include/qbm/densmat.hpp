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

#include <complex>
#include <cstddef>
#include <vector>

#include "qbm/cat.hpp"

namespace qbm {

struct DensityMatrixSample {
  double x = 0.0;
  double x_prime = 0.0;
  std::complex<double> value;
};

/// <x|rho|x'> of a packet started at the origin with covariance \p a.
std::complex<double> rho_kernel(double x, double x_prime, const SecondMoments& a, double hbar);

std::complex<double> rho_element_gaussian(double x, double x_prime, double t, const SimParams& params,
                                          const GaussianInit& init);

/// Two diagonal peaks at x = x' = +-m Gdot d/2 and two off-diagonal peaks at
/// x = -x' = +-K d/2 weighted by exp(-A(t)).
std::complex<double> rho_element_cat(double x, double x_prime, double t, const SimParams& params,
                                     const CatInit& init);

DensityMatrixSample rho_sample(double x, double x_prime, double t, const SimParams& params,
                               const StateInit& state);

/// Tr rho^2 = hbar / (2 sqrt(det A)). Single packets only: a CatInit throws
/// std::invalid_argument (use purity_quadrature or density_matrix_spectrum).
double purity(double t, const SimParams& params, const StateInit& state);

/// 1 + (1 - 4 sigma^2 / lambda_th^2) gamma t, zero-temperature packets.
double purity_shorttime(double t, const SimParams& params, double sigma);

/// Normalized probe state x exp(-(1/(4 sigma^2) + i m gamma/(2 hbar)) x^2), the
/// derivative of the squeezed packet at the origin.
std::complex<double> witness_state(double x, const SimParams& params, double sigma);

/// <psi, rho(t) psi> for the probe above and a packet started at the origin.
/// Negative exactly when 4 det A / hbar^2 < 1.
double negativity_witness(double t, const SimParams& params, double sigma,
                          Prep prep = Prep::ZeroTemp);

/// Eigen-decomposition of <x|rho|x'> discretized on a uniform grid.
struct DiscreteSpectrum {
  std::vector<double> eigenvalues;  ///< descending
  double step = 0.0;
  double trace = 0.0;
  double purity = 0.0;
  double min_eigenvalue = 0.0;
};

/// Extent is +-(offset + 8 sigma_max) about the origin, where offset is |x0| or
/// d/2 and sigma_max = max(sigma, sqrt(A11(t))).
DiscreteSpectrum density_matrix_spectrum(double t, const SimParams& params, const StateInit& state,
                                         std::size_t n = 256);

}  // namespace qbm
