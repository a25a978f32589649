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

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <utility>

#include "qbm/cat.hpp"
#include "qbm/grid.hpp"

namespace qbm {

/// W~(Q, P): any Wigner characteristic function with Gaussian decay.
using CharSampler = std::function<std::complex<double>(double Q, double P)>;

/// Symmetric truncation box [-q_half, q_half] x [-p_half, p_half] in (Q, P).
struct QuadratureBox {
  double q_half = 1.0;
  double p_half = 1.0;
};

/**
 * Trapezoidal quadrature settings. Every transform is evaluated with
 * nodes and 2*nodes points per axis over the same box; the larger rule is
 * returned and the difference is the reported error estimate. When
 * check_convergence is set, an estimate above tolerance throws NumericalError.
 */
struct QuadratureOptions {
  std::size_t nodes = 256;
  double tolerance = 1e-9;
  bool check_convergence = true;
};

CharSampler char_sampler(double t, const SimParams& params, const StateInit& state);

/// +-widths standard deviations of the Gaussian envelope of W~ (plus the
/// displacement of the cat's cosh branches).
QuadratureBox char_box(double t, const SimParams& params, const StateInit& state, double widths = 8.0);

struct WignerTransform {
  PhaseSpaceGrid grid;
  double imag_residue = 0.0;    ///< max |Im W| before it is discarded
  double error_estimate = 0.0;  ///< max |W_2n - W_n|
};

/// W(q, p) = (2 pi hbar)^-2 int dQ dP exp(i(qP + pQ)/hbar) W~(Q, P), sampled on \p target.
WignerTransform char_to_wigner(const CharSampler& sampler, const QuadratureBox& box, const GridSpec& target,
                               double hbar, const QuadratureOptions& options = {});

struct QuadratureValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

struct ComplexQuadratureValue {
  std::complex<double> value;
  double error_estimate = 0.0;
};

/// Tr rho^2 = (2 pi hbar)^-1 int dQ dP |W~(Q, P)|^2.
QuadratureValue purity_quadrature(const CharSampler& sampler, const QuadratureBox& box, double hbar,
                                  const QuadratureOptions& options = {});

/// <x|rho|x'> = (2 pi hbar)^-1 int dP exp(i(x + x')P / (2 hbar)) W~(x' - x, P).
ComplexQuadratureValue rho_quadrature(const CharSampler& sampler, double x, double x_prime, double p_half,
                                      double hbar, const QuadratureOptions& options = {});

/**
 * @brief Coefficients of the phase-space master equation
 *
 *   dW/dt = -(p/m) dW/dq + m Omega^2 q dW/dp + 2 Gamma d(pW)/dp
 *           + d_pp d2W/dp2 + d_qp d2W/dqdp
 *
 * with d_pp = hbar m Gamma h and d_qp = hbar Gamma f.
 */
struct ExtractedCoefficients {
  double gamma_coeff = 0.0;  ///< Gamma(t)
  double omega2 = 0.0;       ///< Omega^2(t)
  double d_pp = 0.0;
  double d_qp = 0.0;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// d(Phi)/dt * Phi^-1 for the mean flow Phi = [[m Gdot, G], [m^2 Gddot, m Gdot]].
Matrix2 drift_matrix(double t, const SimParams& params);

/// Closed-form covariance and its analytic time derivative.
struct CovarianceFlow {
  SecondMoments s;
  Matrix2 rate{};
};

CovarianceFlow covariance_flow(double t, const SimParams& params, double sigma, Prep prep);

/// Inverts the mean and covariance flows for the four coefficients using the
/// BathTemp closed forms at each probe width. Throws NumericalError if the
/// probes disagree by more than \p tolerance (absolute) or the recovered
/// flow contradicts free streaming (dq/dt = p/m, no position diffusion).
ExtractedCoefficients extract_coefficients(double t, const SimParams& params,
                                           std::pair<double, double> sigma_probes, double tolerance = 1e-6);

}  // namespace qbm
