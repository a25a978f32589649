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

#include "qbm/cat.hpp"

#include <cmath>
#include <numbers>

namespace qbm {

using std::numbers::pi;

void CatInit::validate() const {
  detail::require_positive(sigma, "sigma");
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("separation d must be finite and >= 0");
}

double CatInit::overlap_exponent() const { return d * d / (8.0 * sigma * sigma); }

double CatInit::norm() const { return 1.0 / (1.0 + std::exp(-overlap_exponent())); }

double state_sigma(const StateInit& state) {
  return std::visit([](const auto& s) { return s.sigma; }, state);
}

Prep state_prep(const StateInit& state) {
  return std::visit([](const auto& s) { return s.prep; }, state);
}

namespace {

struct CatFrame {
  MomentDecomposition md;
  SecondMoments a;
};

CatFrame frame(double t, const SimParams& params, const CatInit& init) {
  init.validate();
  CatFrame f{decompose_moments(t, params, init.sigma, init.prep), {}};
  f.a = f.md.moments(init.prep);
  return f;
}

}  // namespace

std::complex<double> char_function_cat(double Q, double P, double t, const SimParams& params,
                                       const CatInit& init) {
  const CatFrame f = frame(t, params, init);
  const MomentDecomposition& md = f.md;
  const double h2 = params.hbar * params.hbar;
  const double log_env = -(f.a.a11 * P * P + 2.0 * f.a.a12 * P * Q + f.a.a22 * Q * Q) / (2.0 * h2);
  const double wave = (md.u2 * Q + md.u1 * P) * init.d / (2.0 * params.hbar);
  const double growth = (md.u1 * Q + md.v1 * P) * init.d / (4.0 * init.sigma * init.sigma);
  const double c = init.overlap_exponent();
  // exp(-c) cosh(growth) folded into the envelope so large |Q|, |P| cannot overflow
  const double value = std::exp(log_env) * std::cos(wave) +
                       0.5 * (std::exp(log_env - c + growth) + std::exp(log_env - c - growth));
  return {init.norm() * value, 0.0};
}

std::complex<double> initial_char_function(double Q, double P, const SimParams& params,
                                           const CatInit& init) {
  params.validate();
  init.validate();
  const double s2 = init.sigma * init.sigma;
  const double h2 = params.hbar * params.hbar;
  double log_env = -Q * Q / (8.0 * s2) - s2 * P * P / (2.0 * h2);
  if (init.prep == Prep::BathTemp) log_env -= params.m * params.kT * Q * Q / (2.0 * h2);
  const double c = init.overlap_exponent();
  const double growth = Q * init.d / (4.0 * s2);
  const double value = std::exp(log_env) * std::cos(P * init.d / (2.0 * params.hbar)) +
                       0.5 * (std::exp(log_env - c + growth) + std::exp(log_env - c - growth));
  return {init.norm() * value, 0.0};
}

InterferenceMeasure interference_measure(double t, const SimParams& params, const CatInit& init) {
  const CatFrame f = frame(t, params, init);
  const MomentDecomposition& md = f.md;
  const SecondMoments& a = f.a;
  InterferenceMeasure out;
  out.a_of_t = md.reduced_det() / a.det * init.overlap_exponent();
  const double scale = params.hbar * init.d / (4.0 * init.sigma * init.sigma * a.det);
  // G = v1, m Gdot = u1
  out.phi_q = (md.v1 * a.a22 - md.u1 * a.a12) * scale;
  out.phi_p = (md.u1 * a.a11 - md.v1 * a.a12) * scale;
  return out;
}

CatWignerTerms wigner_cat_terms(double q, double p, double t, const SimParams& params,
                                const CatInit& init) {
  const CatFrame f = frame(t, params, init);
  const InterferenceMeasure im = interference_measure(t, params, init);
  const double cq = 0.5 * f.md.u1 * init.d;
  const double cp = 0.5 * f.md.u2 * init.d;
  const double pref = 0.5 * init.norm();
  CatWignerTerms terms;
  terms.direct_plus = pref * gaussian_kernel(q - cq, p - cp, f.a);
  terms.direct_minus = pref * gaussian_kernel(q + cq, p + cp, f.a);
  terms.interference =
      pref * 2.0 * std::exp(-im.a_of_t) * gaussian_kernel(q, p, f.a) * std::cos(im.phase(q, p));
  return terms;
}

double wigner_cat(double q, double p, double t, const SimParams& params, const CatInit& init) {
  return wigner_cat_terms(q, p, t, params, init).total();
}

double interference_shorttime(double t, const SimParams& params, const CatInit& init) {
  params.validate();
  init.validate();
  detail::require_time(t);
  const double lam = params.thermal_wavelength();
  const double d2 = init.d * init.d;
  if (init.prep == Prep::ZeroTemp) return d2 / (lam * lam) * params.gamma * t;
  return d2 / (2.0 * lam * lam + 8.0 * init.sigma * init.sigma);
}

namespace {

// Numerator of the attenuation exponent: <X^2> (+ m kT G^2 for BathTemp),
// i.e. A11 - sigma^2 m^2 Gdot^2 - hbar^2 G^2 / (4 sigma^2).
double fringe_spread(const MomentDecomposition& md) {
  return md.b11 + md.thermal * md.v1 * md.v1;
}

double position_kernel(double x, double a11) {
  return std::exp(-x * x / (2.0 * a11)) / std::sqrt(2.0 * pi * a11);
}

}  // namespace

double attenuation(double t, const SimParams& params, const CatInit& init) {
  const CatFrame f = frame(t, params, init);
  return std::exp(-fringe_spread(f.md) * init.overlap_exponent() / f.a.a11);
}

double attenuation_shorttime(double t, const SimParams& params, const CatInit& init) {
  params.validate();
  init.validate();
  detail::require_time(t);
  const double s2 = init.sigma * init.sigma;
  if (init.prep == Prep::ZeroTemp) {
    if (init.d == 0.0) return 1.0;
    const double tau_d = decoherence_time(params, init.d);
    const double crossover = 2.0 * params.m * s2 / params.hbar;
    return std::exp(-t * t * t / (3.0 * tau_d * (t * t + crossover * crossover)));
  }
  return std::exp(-params.kT * init.d * init.d * t * t / (8.0 * params.m * s2 * s2));
}

double probability_distribution(double x, double t, const SimParams& params, const CatInit& init) {
  const CatFrame f = frame(t, params, init);
  const double a11 = f.a.a11;
  const double shift = 0.5 * f.md.u1 * init.d;
  const double a = attenuation(t, params, init);
  const double damp = std::exp(-f.md.u1 * f.md.u1 * init.d * init.d / (8.0 * a11));
  const double k = params.hbar * f.md.v1 * init.d / (4.0 * init.sigma * init.sigma * a11);
  return 0.5 * init.norm() *
         (position_kernel(x - shift, a11) + position_kernel(x + shift, a11) +
          2.0 * a * damp * position_kernel(x, a11) * std::cos(k * x));
}

double mixing_time(const SimParams& params, double sigma, double d) {
  params.validate();
  detail::require_positive(sigma, "sigma");
  detail::require_positive(d, "separation d");
  return 2.0 * params.m * sigma * d / params.hbar;
}

}  // namespace qbm
