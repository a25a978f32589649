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

#include <algorithm>
#include <cmath>
#include <string>

#include "qbm/oracle.hpp"

namespace qbm {

namespace {

struct Flow {
  Matrix2 phi;
  Matrix2 rate;
};

Flow mean_flow(double t, const SimParams& params) {
  const GreenEval g = green_function(t, params);
  const double m = params.m;
  const double g3 = -params.gamma * g.gddot;  // third derivative, Ohmic
  Flow f;
  f.phi = {{{m * g.gdot, g.g}, {m * m * g.gddot, m * g.gdot}}};
  f.rate = {{{m * g.gddot, g.gdot}, {m * m * g3, m * g.gddot}}};
  return f;
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Matrix2 transpose(const Matrix2& a) { return {{{a[0][0], a[1][0]}, {a[0][1], a[1][1]}}}; }

}  // namespace

Matrix2 drift_matrix(double t, const SimParams& params) {
  const Flow f = mean_flow(t, params);
  const double det = f.phi[0][0] * f.phi[1][1] - f.phi[0][1] * f.phi[1][0];
  const Matrix2 inverse{{{f.phi[1][1] / det, -f.phi[0][1] / det}, {-f.phi[1][0] / det, f.phi[0][0] / det}}};
  return multiply(f.rate, inverse);
}

CovarianceFlow covariance_flow(double t, const SimParams& params, double sigma, Prep prep) {
  const MomentDecomposition md = decompose_moments(t, params, sigma, prep);
  const Flow f = mean_flow(t, params);
  CovarianceFlow out;
  out.s = md.moments(prep);
  // d/dt (Phi S0 Phi^T) with S0 = diag(sq, sp)
  const Matrix2 s0{{{md.sq, 0.0}, {0.0, md.sp}}};
  const Matrix2 left = multiply(multiply(f.rate, s0), transpose(f.phi));
  // bath part: dB/dt = 2 m gamma kT v v^T with v = (G, m Gdot)
  const double bath = 2.0 * params.m * params.gamma * params.kT;
  const double v[2] = {md.v1, md.v2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.rate[i][j] = left[i][j] + left[j][i] + bath * v[i] * v[j];
  return out;
}

ExtractedCoefficients extract_coefficients(double t, const SimParams& params,
                                           std::pair<double, double> sigma_probes, double tolerance) {
  params.validate();
  detail::require_time(t);
  if (sigma_probes.first == sigma_probes.second) {
    throw std::invalid_argument("coefficient extraction needs two distinct probe widths");
  }
  const Matrix2 drift = drift_matrix(t, params);

  const auto invert = [&](double sigma) {
    const CovarianceFlow flow = covariance_flow(t, params, sigma, Prep::BathTemp);
    const Matrix2 s{{{flow.s.a11, flow.s.a12}, {flow.s.a12, flow.s.a22}}};
    const Matrix2 fs = multiply(drift, s);
    Matrix2 diffusion{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) diffusion[i][j] = 0.5 * (flow.rate[i][j] - fs[i][j] - fs[j][i]);
    if (std::abs(diffusion[0][0]) > tolerance) {
      throw NumericalError("extracted position diffusion " + std::to_string(diffusion[0][0]) +
                           " contradicts the master-equation form");
    }
    ExtractedCoefficients c;
    c.gamma_coeff = -0.5 * drift[1][1];
    c.omega2 = -drift[1][0] / params.m;
    c.d_pp = diffusion[1][1];
    c.d_qp = 2.0 * diffusion[0][1];
    return c;
  };

  if (std::abs(drift[0][0]) > tolerance || std::abs(drift[0][1] * params.m - 1.0) > tolerance) {
    throw NumericalError("extracted mean flow is not free streaming dq/dt = p/m");
  }
  const ExtractedCoefficients a = invert(sigma_probes.first);
  const ExtractedCoefficients b = invert(sigma_probes.second);
  const double spread = std::max(std::abs(a.d_pp - b.d_pp), std::abs(a.d_qp - b.d_qp));
  if (spread > tolerance) {
    throw NumericalError("extracted diffusion depends on the probe width (spread " + std::to_string(spread) + ")");
  }
  return a;
}

}  // namespace qbm
