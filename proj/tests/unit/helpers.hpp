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

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace qbm::testing {

inline double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Composite Simpson rule; n is rounded up to even.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  return s * h / 3.0;
}

inline double trapezoid2(const std::function<double(double, double)>& f, double qa, double qb, double pa, double pb,
                         std::size_t n) {
  const double hq = (qb - qa) / static_cast<double>(n - 1);
  const double hp = (pb - pa) / static_cast<double>(n - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wj = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      s += wi * wj * f(qa + hq * static_cast<double>(i), pa + hp * static_cast<double>(j));
    }
  }
  return s * hq * hp;
}

// Moment equations of the damped particle with white-noise momentum kicks,
// integrated with RK4: dS/dt = F S + S F^T + diag(0, 2 m gamma kT),
// F = [[0, 1/m], [0, -gamma]]. State is (S11, S12, S22).
struct Covariance {
  double s11, s12, s22;
};

inline Covariance propagate_covariance(Covariance s, double m, double gamma, double kT, double t, std::size_t steps) {
  const auto rate = [&](const Covariance& c) {
    return Covariance{2.0 * c.s12 / m, c.s22 / m - gamma * c.s12, -2.0 * gamma * c.s22 + 2.0 * m * gamma * kT};
  };
  const double h = t / static_cast<double>(steps);
  const auto axpy = [](const Covariance& a, double k, const Covariance& b) {
    return Covariance{a.s11 + k * b.s11, a.s12 + k * b.s12, a.s22 + k * b.s22};
  };
  for (std::size_t i = 0; i < steps; ++i) {
    const Covariance k1 = rate(s);
    const Covariance k2 = rate(axpy(s, 0.5 * h, k1));
    const Covariance k3 = rate(axpy(s, 0.5 * h, k2));
    const Covariance k4 = rate(axpy(s, h, k3));
    s.s11 += h / 6.0 * (k1.s11 + 2.0 * k2.s11 + 2.0 * k3.s11 + k4.s11);
    s.s12 += h / 6.0 * (k1.s12 + 2.0 * k2.s12 + 2.0 * k3.s12 + k4.s12);
    s.s22 += h / 6.0 * (k1.s22 + 2.0 * k2.s22 + 2.0 * k3.s22 + k4.s22);
  }
  return s;
}

}  // namespace qbm::testing
