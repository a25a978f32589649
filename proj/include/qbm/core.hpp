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

#include <stdexcept>
#include <string>

namespace qbm {

/// Raised when a numerical procedure fails its own convergence or
/// conservation contract (quadrature non-convergence, CFL violation,
/// mass drift, NaN). Distinct from std::invalid_argument, which flags bad
/// inputs.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * @brief Particle and bath constants in a caller-chosen consistent unit system.
 *
 * Friction constant is m*gamma (Ohmic bath); kT is the bath thermal energy.
 * No hidden nondimensionalization is applied anywhere in the library.
 */
struct SimParams {
  double m = 1.0;      ///< particle mass
  double gamma = 1.0;  ///< friction rate (1/time)
  double kT = 5.0;     ///< bath thermal energy
  double hbar = 1.0;   ///< action quantum

  /// Throws std::invalid_argument unless every constant is finite and > 0.
  void validate() const;

  /// hbar / sqrt(m kT)
  double thermal_wavelength() const;
};

/// hbar = m = gamma = 1, kT = 5: the parameter set of both figures
/// (lambda_th = 4 sigma with sigma = lambda_th / 4, kT = 5 hbar gamma).
inline SimParams figure_params() { return SimParams{1.0, 1.0, 5.0, 1.0}; }

/// G(t) and its first two time derivatives.
struct GreenEval {
  double g = 0.0;      ///< G(t)   (time/mass)
  double gdot = 0.0;   ///< dG/dt  (1/mass)
  double gddot = 0.0;  ///< d2G/dt2 (rate/mass)
};

/// Bath-induced quadratic fluctuations of the particle coordinate.
struct FluctuationMoments {
  double x2 = 0.0;   ///< <X^2>
  double xxd = 0.0;  ///< <X Xdot + Xdot X>
  double xd2 = 0.0;  ///< <Xdot^2>
};

/// 1 - exp(-u), accurate for small u.
double one_minus_exp(double u);

/// 2u - (1 - e^{-u})(3 - e^{-u}), accurate for small u where the closed
/// form cancels to O(u^3).
double ramp_integral(double u);

/// Ohmic free-particle Green function, G = (1 - e^{-gamma t})/(m gamma).
GreenEval green_function(double t, const SimParams& params);

/// High-temperature moments 2 m gamma kT * int_0^t {G^2, G^2 derivative, Gdot^2}.
FluctuationMoments fluctuation_moments(double t, const SimParams& params);

double thermal_wavelength(const SimParams& params);

/// (lambda_th^2 / d^2) / gamma. Throws std::invalid_argument for d <= 0.
double decoherence_time(const SimParams& params, double d);

namespace detail {
void require_time(double t);
void require_positive(double value, const std::string& name);
}  // namespace detail

}  // namespace qbm
