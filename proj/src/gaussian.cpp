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

#include "qbm/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace qbm {

using std::numbers::pi;

const char* to_string(Prep prep) { return prep == Prep::ZeroTemp ? "zero" : "bath"; }

void GaussianInit::validate() const {
  detail::require_positive(sigma, "sigma");
  if (!std::isfinite(x0)) throw std::invalid_argument("x0 must be finite");
}

namespace {

// x^T adj(B) x for the symmetric 2x2 bath block.
double adj_form(const MomentDecomposition& md, double x, double y) {
  return x * x * md.b22 - 2.0 * x * y * md.b12 + y * y * md.b11;
}

// det(B + a u u^T + b v v^T) = det B + a u.adj(B).u + b v.adj(B).v + ab (u x v)^2
double structured_det(const MomentDecomposition& md, double v_weight, double weight_product) {
  const double det_b = md.b11 * md.b22 - md.b12 * md.b12;
  return det_b + md.sq * adj_form(md, md.u1, md.u2) + v_weight * adj_form(md, md.v1, md.v2) +
         weight_product * md.flow_det * md.flow_det;
}

}  // namespace

// sq * sp is formed as hbar^2/4 + sq * thermal so the pure-state value is exact.
double MomentDecomposition::det() const {
  return structured_det(*this, sp, 0.25 * hbar * hbar + sq * thermal);
}

double MomentDecomposition::reduced_det() const {
  return structured_det(*this, thermal, sq * thermal);
}

SecondMoments MomentDecomposition::moments(Prep prep) const {
  SecondMoments s;
  s.a11 = sq * u1 * u1 + sp * v1 * v1 + b11;
  s.a12 = sq * u1 * u2 + sp * v1 * v2 + b12;
  s.a22 = sq * u2 * u2 + sp * v2 * v2 + b22;
  s.det = det();
  s.prep = prep;
  return s;
}

MomentDecomposition decompose_moments(double t, const SimParams& params, double sigma, Prep prep) {
  detail::require_positive(sigma, "sigma");
  const GreenEval g = green_function(t, params);
  const FluctuationMoments f = fluctuation_moments(t, params);
  const double m = params.m;
  MomentDecomposition md;
  md.u1 = m * g.gdot;
  md.u2 = m * m * g.gddot;
  md.v1 = g.g;
  md.v2 = m * g.gdot;
  md.b11 = f.x2;
  md.b12 = 0.5 * m * f.xxd;
  md.b22 = m * m * f.xd2;
  md.sq = sigma * sigma;
  md.thermal = prep == Prep::BathTemp ? m * params.kT : 0.0;
  md.sp = params.hbar * params.hbar / (4.0 * sigma * sigma) + md.thermal;
  md.flow_det = std::exp(-params.gamma * t);
  md.hbar = params.hbar;
  return md;
}

SecondMoments second_moments(double t, const SimParams& params, double sigma, Prep prep) {
  return decompose_moments(t, params, sigma, prep).moments(prep);
}

SecondMoments second_moments(double t, const SimParams& params, const GaussianInit& init) {
  init.validate();
  return second_moments(t, params, init.sigma, init.prep);
}

PhasePoint mean_trajectory(double t, const SimParams& params, double x0) {
  const GreenEval g = green_function(t, params);
  return PhasePoint{params.m * g.gdot * x0, params.m * params.m * g.gddot * x0};
}

std::complex<double> char_function_gaussian(double Q, double P, double t, const SimParams& params,
                                            const GaussianInit& init) {
  init.validate();
  const SecondMoments a = second_moments(t, params, init);
  const PhasePoint c = mean_trajectory(t, params, 1.0);
  const double h2 = params.hbar * params.hbar;
  const double re = -(a.a11 * P * P + 2.0 * a.a12 * P * Q + a.a22 * Q * Q) / (2.0 * h2);
  const double im = -init.x0 * (c.p * Q + c.q * P) / params.hbar;
  return std::exp(std::complex<double>(re, im));
}

std::complex<double> initial_char_function(double Q, double P, const SimParams& params,
                                           const GaussianInit& init) {
  params.validate();
  init.validate();
  const double s2 = init.sigma * init.sigma;
  const double h2 = params.hbar * params.hbar;
  double re = -Q * Q / (8.0 * s2) - s2 * P * P / (2.0 * h2);
  if (init.prep == Prep::BathTemp) re -= params.m * params.kT * Q * Q / (2.0 * h2);
  return std::exp(std::complex<double>(re, -init.x0 * P / params.hbar));
}

double gaussian_kernel(double q, double p, const SecondMoments& a) {
  const double quad = a.a22 * q * q - 2.0 * a.a12 * q * p + a.a11 * p * p;
  return std::exp(-quad / (2.0 * a.det)) / (2.0 * pi * std::sqrt(a.det));
}

double wigner_gaussian(double q, double p, double t, const SimParams& params, const GaussianInit& init) {
  const SecondMoments a = second_moments(t, params, init);
  const PhasePoint c = mean_trajectory(t, params, init.x0);
  return gaussian_kernel(q - c.q, p - c.p, a);
}

double initial_squeezed_state(double q, double p, const SimParams& params, const GaussianInit& init) {
  params.validate();
  init.validate();
  const double s2 = init.sigma * init.sigma;
  const double h2 = params.hbar * params.hbar;
  const double kick = p + params.m * params.gamma * q;
  const double dq = q - init.x0;
  if (init.prep == Prep::ZeroTemp) {
    return std::exp(-dq * dq / (2.0 * s2) - 2.0 * s2 * kick * kick / h2) / (pi * params.hbar);
  }
  const double lam = params.thermal_wavelength();
  const double dp2 = h2 / (4.0 * s2) + params.m * params.kT;
  return std::exp(-dq * dq / (2.0 * s2) - kick * kick / (2.0 * dp2)) /
         (pi * params.hbar * std::sqrt(1.0 + 4.0 * s2 / (lam * lam)));
}

}  // namespace qbm
