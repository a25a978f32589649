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

#include "qbm/core.hpp"

#include <cmath>

namespace qbm {

namespace detail {

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("time must be finite and >= 0, got " + std::to_string(t));
  }
}

void require_positive(double value, const std::string& name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(name + " must be finite and > 0, got " + std::to_string(value));
  }
}

}  // namespace detail

void SimParams::validate() const {
  detail::require_positive(m, "m");
  detail::require_positive(gamma, "gamma");
  detail::require_positive(kT, "kT");
  detail::require_positive(hbar, "hbar");
}

double SimParams::thermal_wavelength() const { return hbar / std::sqrt(m * kT); }

double one_minus_exp(double u) { return -std::expm1(-u); }

double ramp_integral(double u) {
  if (u < 1.0) {
    // 2 sum_{n>=2} (-1)^n (2^n - 2) u^{n+1} / (n+1)!
    double sum = 0.0;
    double upow = u * u * u;  // u^{n+1}
    double fact = 6.0;        // (n+1)!
    double two_n = 4.0;       // 2^n
    for (int n = 2; n < 40; ++n) {
      const double term = (two_n - 2.0) * upow / fact;
      sum += (n % 2 == 0) ? term : -term;
      if (term < 1e-18 * std::abs(sum)) break;
      upow *= u;
      fact *= static_cast<double>(n + 2);
      two_n *= 2.0;
    }
    return 2.0 * sum;
  }
  const double w = one_minus_exp(u);
  return 2.0 * u - w * (2.0 + w);
}

GreenEval green_function(double t, const SimParams& params) {
  params.validate();
  detail::require_time(t);
  const double e = std::exp(-params.gamma * t);
  return GreenEval{one_minus_exp(params.gamma * t) / (params.m * params.gamma), e / params.m,
                   -params.gamma * e / params.m};
}

FluctuationMoments fluctuation_moments(double t, const SimParams& params) {
  params.validate();
  detail::require_time(t);
  const double u = params.gamma * t;
  const double w = one_minus_exp(u);
  const double mg = params.m * params.gamma;
  return FluctuationMoments{params.kT / (mg * params.gamma) * ramp_integral(u),
                            2.0 * params.kT / mg * w * w,
                            params.kT / params.m * one_minus_exp(2.0 * u)};
}

double thermal_wavelength(const SimParams& params) {
  params.validate();
  return params.thermal_wavelength();
}

double decoherence_time(const SimParams& params, double d) {
  params.validate();
  detail::require_positive(d, "separation d");
  const double lam = params.thermal_wavelength();
  return lam * lam / (d * d) / params.gamma;
}

}  // namespace qbm
