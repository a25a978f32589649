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

#include "qbm/core.hpp"

namespace qbm {

/// Temperature of the particle just before it is clamped to the bath.
enum class Prep { ZeroTemp, BathTemp };

const char* to_string(Prep prep);

/// Single Gaussian packet at rest, centered at x0 with rms width sigma.
struct GaussianInit {
  double x0 = 0.0;
  double sigma = 1.0;
  Prep prep = Prep::ZeroTemp;

  void validate() const;
};

/**
 * @brief Phase-space covariance of a single packet started at the origin.
 *
 * a11 = dx^2, a22 = dp^2, a12 the symmetrized x-p covariance. det is the
 * determinant a11*a22 - a12^2, computed from the structured decomposition in
 * MomentDecomposition so that it carries no cancellation error (in
 * particular det = hbar^2/4 exactly for a zero-temperature packet at t = 0).
 */
struct SecondMoments {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
  double det = 0.0;
  Prep prep = Prep::ZeroTemp;
};

/**
 * @brief Covariance split into flow-transported and bath-generated parts.
 *
 * A = sq * u u^T + sp * v v^T + B, where (u, v) are the columns of the
 * phase-space flow [[m Gdot, G], [m^2 Gddot, m Gdot]], sq = sigma^2,
 * sp = hbar^2/(4 sigma^2) + thermal and B holds the bath moments
 * (<X^2>, m<XXdot+XdotX>/2, m^2<Xdot^2>). thermal is m kT for BathTemp and 0
 * otherwise. flow_det = u x v = exp(-gamma t).
 */
struct MomentDecomposition {
  double u1 = 0.0, u2 = 0.0;
  double v1 = 0.0, v2 = 0.0;
  double b11 = 0.0, b12 = 0.0, b22 = 0.0;
  double sq = 0.0;
  double sp = 0.0;
  double thermal = 0.0;
  double flow_det = 1.0;
  double hbar = 1.0;

  SecondMoments moments(Prep prep) const;

  /// det A.
  double det() const;

  /// det(A - hbar^2/(4 sigma^2) v v^T): the covariance with the packet's
  /// own momentum spread removed. Vanishes at t = 0 for ZeroTemp.
  double reduced_det() const;
};

MomentDecomposition decompose_moments(double t, const SimParams& params, double sigma, Prep prep);

SecondMoments second_moments(double t, const SimParams& params, double sigma, Prep prep);
SecondMoments second_moments(double t, const SimParams& params, const GaussianInit& init);

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

/// Center of the packet: (x0 e^{-gamma t}, -m gamma x0 e^{-gamma t}).
PhasePoint mean_trajectory(double t, const SimParams& params, double x0);

/// Wigner characteristic function at time t (t = 0 means just after coupling).
std::complex<double> char_function_gaussian(double Q, double P, double t, const SimParams& params,
                                            const GaussianInit& init);

/// Characteristic function of the uncoupled packet, before the squeeze.
std::complex<double> initial_char_function(double Q, double P, const SimParams& params,
                                           const GaussianInit& init);

/// Centered Gaussian exp(-(a22 q^2 - 2 a12 q p + a11 p^2)/(2 det)) / (2 pi sqrt(det)).
double gaussian_kernel(double q, double p, const SecondMoments& moments);

double wigner_gaussian(double q, double p, double t, const SimParams& params, const GaussianInit& init);

/// Explicit post-squeeze Wigner function W(q, p; 0+).
double initial_squeezed_state(double q, double p, const SimParams& params, const GaussianInit& init);

}  // namespace qbm
