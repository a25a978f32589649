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

#include "qbm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace qbm {

using cplx = std::complex<double>;
using std::numbers::pi;

CharSampler char_sampler(double t, const SimParams& params, const StateInit& state) {
  return std::visit(
      [t, params](const auto& s) -> CharSampler {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianInit>) {
          return [t, params, s](double Q, double P) { return char_function_gaussian(Q, P, t, params, s); };
        } else {
          return [t, params, s](double Q, double P) { return char_function_cat(Q, P, t, params, s); };
        }
      },
      state);
}

QuadratureBox char_box(double t, const SimParams& params, const StateInit& state, double widths) {
  const double sigma = state_sigma(state);
  const MomentDecomposition md = decompose_moments(t, params, sigma, state_prep(state));
  const SecondMoments a = md.moments(state_prep(state));
  const double h2 = params.hbar * params.hbar;
  double shift_q = 0.0;
  double shift_p = 0.0;
  if (const auto* cat = std::get_if<CatInit>(&state)) {
    // maximum of the cosh branches: hbar^2 A^-1 beta, beta = (G, m Gdot) d / (4 sigma^2) in (P, Q) order
    const double scale = cat->d / (4.0 * sigma * sigma);
    const double beta_p = md.v1 * scale;
    const double beta_q = md.u1 * scale;
    shift_p = std::abs(h2 * (a.a22 * beta_p - a.a12 * beta_q) / a.det);
    shift_q = std::abs(h2 * (a.a11 * beta_q - a.a12 * beta_p) / a.det);
  }
  return QuadratureBox{shift_q + widths * std::sqrt(h2 * a.a11 / a.det),
                       shift_p + widths * std::sqrt(h2 * a.a22 / a.det)};
}

namespace {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;  // trapezoid weights including the step
};

Rule trapezoid(double half, std::size_t n) {
  Rule r;
  const double h = 2.0 * half / static_cast<double>(n - 1);
  r.nodes.resize(n);
  r.weights.assign(n, h);
  for (std::size_t k = 0; k < n; ++k) r.nodes[k] = -half + h * static_cast<double>(k);
  r.weights.front() *= 0.5;
  r.weights.back() *= 0.5;
  return r;
}

void check_options(const QuadratureOptions& options) {
  if (options.nodes < 16) throw std::invalid_argument("quadrature needs at least 16 nodes per axis");
}

void check_convergence(const QuadratureOptions& options, double estimate, const char* what) {
  if (!std::isfinite(estimate)) throw NumericalError(std::string(what) + ": non-finite quadrature result");
  if (options.check_convergence && estimate > options.tolerance) {
    throw NumericalError(std::string(what) + ": doubling the quadrature nodes changed the result by " +
                         std::to_string(estimate) + " > tolerance " + std::to_string(options.tolerance));
  }
}

// Separable evaluation: first contract over P for every target q, then over Q
// for every target p.
std::vector<cplx> wigner_rule(const CharSampler& sampler, const QuadratureBox& box, const GridSpec& target,
                              double hbar, std::size_t n) {
  const Rule rq = trapezoid(box.q_half, n);
  const Rule rp = trapezoid(box.p_half, n);
  std::vector<cplx> samples(n * n);  // [a (P index)][b (Q index)]
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      samples[a * n + b] = sampler(rq.nodes[b], rp.nodes[a]) * (rp.weights[a] * rq.weights[b]);
    }
  }
  std::vector<cplx> partial(target.nq * n, cplx{});  // [i][b]
  std::vector<cplx> phase(n);
  for (std::size_t i = 0; i < target.nq; ++i) {
    const double q = target.q(i);
    for (std::size_t a = 0; a < n; ++a) phase[a] = std::polar(1.0, q * rp.nodes[a] / hbar);
    cplx* row = &partial[i * n];
    for (std::size_t a = 0; a < n; ++a) {
      const cplx f = phase[a];
      const cplx* src = &samples[a * n];
      for (std::size_t b = 0; b < n; ++b) row[b] += f * src[b];
    }
  }
  const double norm = 1.0 / ((2.0 * pi * hbar) * (2.0 * pi * hbar));
  std::vector<cplx> out(target.nq * target.np);
  for (std::size_t j = 0; j < target.np; ++j) {
    const double p = target.p(j);
    for (std::size_t b = 0; b < n; ++b) phase[b] = std::polar(1.0, p * rq.nodes[b] / hbar);
    for (std::size_t i = 0; i < target.nq; ++i) {
      const cplx* row = &partial[i * n];
      cplx acc{};
      for (std::size_t b = 0; b < n; ++b) acc += row[b] * phase[b];
      out[i * target.np + j] = acc * norm;
    }
  }
  return out;
}

}  // namespace

WignerTransform char_to_wigner(const CharSampler& sampler, const QuadratureBox& box, const GridSpec& target,
                               double hbar, const QuadratureOptions& options) {
  check_options(options);
  target.validate();
  detail::require_positive(hbar, "hbar");
  const std::vector<cplx> coarse = wigner_rule(sampler, box, target, hbar, options.nodes);
  const std::vector<cplx> fine = wigner_rule(sampler, box, target, hbar, 2 * options.nodes);
  WignerTransform out{PhaseSpaceGrid(target), 0.0, 0.0};
  auto values = out.grid.values();
  for (std::size_t k = 0; k < fine.size(); ++k) {
    values[k] = fine[k].real();
    out.imag_residue = std::max(out.imag_residue, std::abs(fine[k].imag()));
    out.error_estimate = std::max(out.error_estimate, std::abs(fine[k] - coarse[k]));
  }
  check_convergence(options, out.error_estimate, "char_to_wigner");
  return out;
}

QuadratureValue purity_quadrature(const CharSampler& sampler, const QuadratureBox& box, double hbar,
                                  const QuadratureOptions& options) {
  check_options(options);
  detail::require_positive(hbar, "hbar");
  const auto rule = [&](std::size_t n) {
    const Rule rq = trapezoid(box.q_half, n);
    const Rule rp = trapezoid(box.p_half, n);
    double sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) sum += std::norm(sampler(rq.nodes[b], rp.nodes[a])) * rp.weights[a] * rq.weights[b];
    }
    return sum / (2.0 * pi * hbar);
  };
  const double coarse = rule(options.nodes);
  const double fine = rule(2 * options.nodes);
  QuadratureValue out{fine, std::abs(fine - coarse)};
  check_convergence(options, out.error_estimate, "purity_quadrature");
  return out;
}

ComplexQuadratureValue rho_quadrature(const CharSampler& sampler, double x, double x_prime, double p_half,
                                      double hbar, const QuadratureOptions& options) {
  check_options(options);
  detail::require_positive(hbar, "hbar");
  const auto rule = [&](std::size_t n) {
    const Rule rp = trapezoid(p_half, n);
    cplx sum{};
    for (std::size_t a = 0; a < n; ++a) {
      const double P = rp.nodes[a];
      sum += std::polar(rp.weights[a], (x + x_prime) * P / (2.0 * hbar)) * sampler(x_prime - x, P);
    }
    return sum / (2.0 * pi * hbar);
  };
  const cplx coarse = rule(options.nodes);
  const cplx fine = rule(2 * options.nodes);
  ComplexQuadratureValue out{fine, std::abs(fine - coarse)};
  check_convergence(options, out.error_estimate, "rho_quadrature");
  return out;
}

}  // namespace qbm
