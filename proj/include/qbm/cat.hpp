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
#include <variant>

#include "qbm/gaussian.hpp"

namespace qbm {

/// Equal-weight superposition of two packets at +d/2 and -d/2.
struct CatInit {
  double d = 0.0;
  double sigma = 1.0;
  Prep prep = Prep::ZeroTemp;

  void validate() const;

  /// 1 / (1 + exp(-d^2 / 8 sigma^2)), in [1/2, 1).
  double norm() const;

  /// d^2 / (8 sigma^2)
  double overlap_exponent() const;
};

using StateInit = std::variant<GaussianInit, CatInit>;

double state_sigma(const StateInit& state);
Prep state_prep(const StateInit& state);

/// Decay exponent A(t) of the interference term and the linear phase
/// Phi(q, p) = phi_q * q + phi_p * p.
struct InterferenceMeasure {
  double a_of_t = 0.0;
  double phi_q = 0.0;
  double phi_p = 0.0;

  double phase(double q, double p) const { return phi_q * q + phi_p * p; }
};

/// The three normalized pieces of the cat Wigner function.
struct CatWignerTerms {
  double direct_plus = 0.0;   ///< packet started at +d/2
  double direct_minus = 0.0;  ///< packet started at -d/2
  double interference = 0.0;

  double total() const { return direct_plus + direct_minus + interference; }
};

std::complex<double> char_function_cat(double Q, double P, double t, const SimParams& params,
                                       const CatInit& init);

/// Pre-coupling characteristic function of the pair.
std::complex<double> initial_char_function(double Q, double P, const SimParams& params,
                                           const CatInit& init);

InterferenceMeasure interference_measure(double t, const SimParams& params, const CatInit& init);

CatWignerTerms wigner_cat_terms(double q, double p, double t, const SimParams& params,
                                const CatInit& init);

double wigner_cat(double q, double p, double t, const SimParams& params, const CatInit& init);

/// Short-time form of A(t): d^2 gamma t / lambda_th^2 (ZeroTemp) or the
/// time-independent d^2 / (2 lambda_th^2 + 8 sigma^2) (BathTemp).
double interference_shorttime(double t, const SimParams& params, const CatInit& init);

/// Position distribution: two drifting packets plus an attenuated fringe term.
double probability_distribution(double x, double t, const SimParams& params, const CatInit& init);

/// Fringe amplitude factor a(t) in (0, 1].
double attenuation(double t, const SimParams& params, const CatInit& init);

double attenuation_shorttime(double t, const SimParams& params, const CatInit& init);

/// 2 m sigma d / hbar: time for free spreading to make the packets overlap.
double mixing_time(const SimParams& params, double sigma, double d);

}  // namespace qbm
