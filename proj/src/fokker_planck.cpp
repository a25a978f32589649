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

#include "qbm/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qbm {

using std::numbers::pi;

CoefficientSource extracted_coefficients(const SimParams& params) {
  const double lam = thermal_wavelength(params);
  return [params, lam](double t) { return extract_coefficients(t, params, {lam, 2.0 * lam}); };
}

double max_stable_dt(const GridSpec& grid, const SimParams& params, const ExtractedCoefficients& c) {
  grid.validate();
  const double hq = grid.dq();
  const double hp = grid.dp();
  const double p_max = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  const double q_max = std::max(std::abs(grid.q_min), std::abs(grid.q_max));
  const double vq = p_max / params.m;
  const double vp = std::abs(params.m * c.omega2) * q_max + 2.0 * std::abs(c.gamma_coeff) * p_max;
  // RK4 reaches ~1.6 on the imaginary axis for third-order upwinding and
  // 2.78 on the negative real axis; the fourth-order diffusion stencil peaks
  // at (56/24)^2 / h^2.
  const double rate = (vq / hq + vp / hp) / 1.5 + (56.0 / 24.0) * (56.0 / 24.0) * std::abs(c.d_pp) / (2.6 * hp * hp) +
                      std::abs(c.d_qp) / (hq * hp);
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}

namespace {

constexpr std::size_t kGhost = 2;

// Third-order upwind-biased face value between cells 0 and 1.
inline double upwind(double wm1, double w0, double w1, double w2, double velocity) {
  return velocity > 0.0 ? (-wm1 + 5.0 * w0 + 2.0 * w1) / 6.0 : (2.0 * w0 + 5.0 * w1 - w2) / 6.0;
}

class Stepper {
 public:
  Stepper(const GridSpec& spec, const SimParams& params)
      : spec_(spec),
        params_(params),
        nq_(spec.nq),
        np_(spec.np),
        stride_(spec.np + 2 * kGhost),
        padded_((spec.nq + 2 * kGhost) * stride_, 0.0),
        flux_q_((spec.nq + 1) * spec.np, 0.0),
        flux_p_(spec.nq * (spec.np + 1), 0.0) {}

  void rhs(const ExtractedCoefficients& c, const std::vector<double>& w, std::vector<double>& out) {
    for (std::size_t i = 0; i < nq_; ++i) {
      std::copy_n(&w[i * np_], np_, &padded_[(i + kGhost) * stride_ + kGhost]);
    }
    const auto at = [this](std::ptrdiff_t i, std::ptrdiff_t j) {
      return padded_[static_cast<std::size_t>(i + static_cast<std::ptrdiff_t>(kGhost)) * stride_ +
                     static_cast<std::size_t>(j + static_cast<std::ptrdiff_t>(kGhost))];
    };
    const double hq = spec_.dq();
    const double hp = spec_.dp();
    const auto nq = static_cast<std::ptrdiff_t>(nq_);
    const auto np = static_cast<std::ptrdiff_t>(np_);

    // q-faces: flux_q_[(i+1) * np + j] sits between cells i and i+1; outer faces stay zero
    for (std::ptrdiff_t i = 0; i + 1 < nq; ++i) {
      double* f = &flux_q_[static_cast<std::size_t>(i + 1) * np_];
      for (std::ptrdiff_t j = 0; j < np; ++j) {
        const double v = spec_.p(static_cast<std::size_t>(j)) / params_.m;
        f[j] = v * upwind(at(i - 1, j), at(i, j), at(i + 1, j), at(i + 2, j), v);
      }
    }
    // p-faces: flux_p_[i * (np+1) + j + 1] sits between cells j and j+1
    for (std::ptrdiff_t i = 0; i < nq; ++i) {
      const double q = spec_.q(static_cast<std::size_t>(i));
      double* f = &flux_p_[static_cast<std::size_t>(i) * (np_ + 1)];
      for (std::ptrdiff_t j = 0; j + 1 < np; ++j) {
        const double p_face = spec_.p_min + hp * (static_cast<double>(j) + 0.5);
        const double v = -params_.m * c.omega2 * q - 2.0 * c.gamma_coeff * p_face;
        const double advect = v * upwind(at(i, j - 1), at(i, j), at(i, j + 1), at(i, j + 2), v);
        const double grad_p = (at(i, j - 1) - 27.0 * at(i, j) + 27.0 * at(i, j + 1) - at(i, j + 2)) / (24.0 * hp);
        const double grad_q =
            (at(i + 1, j) - at(i - 1, j) + at(i + 1, j + 1) - at(i - 1, j + 1)) / (4.0 * hq);
        f[j + 1] = advect - c.d_pp * grad_p - c.d_qp * grad_q;
      }
    }
    for (std::size_t i = 0; i < nq_; ++i) {
      const double* fq_lo = &flux_q_[i * np_];
      const double* fq_hi = &flux_q_[(i + 1) * np_];
      const double* fp = &flux_p_[i * (np_ + 1)];
      double* o = &out[i * np_];
      for (std::size_t j = 0; j < np_; ++j) {
        o[j] = -(fq_hi[j] - fq_lo[j]) / hq - (fp[j + 1] - fp[j]) / hp;
      }
    }
  }

 private:
  GridSpec spec_;
  SimParams params_;
  std::size_t nq_;
  std::size_t np_;
  std::size_t stride_;
  std::vector<double> padded_;
  std::vector<double> flux_q_;
  std::vector<double> flux_p_;
};

double plain_sum(const std::vector<double>& w) {
  double s = 0.0;
  for (double v : w) s += v;
  return s;
}

}  // namespace

FokkerPlanckResult fokker_planck_integrate(const PhaseSpaceGrid& initial, const SimParams& params, double t_end,
                                           double dt, const FokkerPlanckOptions& options) {
  params.validate();
  detail::require_time(t_end);
  detail::require_positive(dt, "dt");
  const GridSpec& spec = initial.spec();
  spec.validate();
  const CoefficientSource coefficients = options.coefficients ? options.coefficients : extracted_coefficients(params);

  FokkerPlanckResult result;
  result.snapshots.push_back(Snapshot{0.0, initial});
  const double initial_max = initial.max_value();
  result.min_ratio = initial_max > 0.0 ? initial.min_value() / initial_max : 0.0;
  if (t_end == 0.0) return result;

  result.steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  result.dt = t_end / static_cast<double>(result.steps);
  const double h = result.dt;

  std::vector<double> w(initial.values().begin(), initial.values().end());
  const std::size_t n = w.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), stage(n);
  Stepper stepper(spec, params);
  const double mass0 = plain_sum(w);
  if (!std::isfinite(mass0) || mass0 == 0.0) throw NumericalError("initial grid has zero or non-finite mass");

  const auto record = [&](double t) {
    PhaseSpaceGrid grid(spec);
    std::copy(w.begin(), w.end(), grid.values().begin());
    const double mx = grid.max_value();
    const double ratio = mx > 0.0 ? grid.min_value() / mx : 0.0;
    result.min_ratio = std::min(result.min_ratio, ratio);
    if (ratio < -options.negativity_ratio) result.negativity_flagged = true;
    result.snapshots.push_back(Snapshot{t, std::move(grid)});
  };

  for (std::size_t step = 0; step < result.steps; ++step) {
    const double t = h * static_cast<double>(step);
    const ExtractedCoefficients c0 = coefficients(t);
    const ExtractedCoefficients c_half = coefficients(t + 0.5 * h);
    const ExtractedCoefficients c1 = coefficients(t + h);
    for (const auto* c : {&c0, &c_half, &c1}) {
      const double limit = max_stable_dt(spec, params, *c);
      if (h > limit) {
        throw NumericalError("CFL violation: dt " + std::to_string(h) + " exceeds stable limit " +
                             std::to_string(limit));
      }
    }
    stepper.rhs(c0, w, k1);
    for (std::size_t k = 0; k < n; ++k) stage[k] = w[k] + 0.5 * h * k1[k];
    stepper.rhs(c_half, stage, k2);
    for (std::size_t k = 0; k < n; ++k) stage[k] = w[k] + 0.5 * h * k2[k];
    stepper.rhs(c_half, stage, k3);
    for (std::size_t k = 0; k < n; ++k) stage[k] = w[k] + h * k3[k];
    stepper.rhs(c1, stage, k4);
    for (std::size_t k = 0; k < n; ++k) w[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);

    const double mass = plain_sum(w);
    if (!std::isfinite(mass)) {
      throw NumericalError("non-finite Wigner values at t = " + std::to_string(t + h));
    }
    const double drift = std::abs(mass - mass0) / std::abs(mass0);
    result.max_mass_drift = std::max(result.max_mass_drift, drift);
    if (drift > options.mass_tolerance) {
      throw NumericalError("mass drift " + std::to_string(drift) + " exceeds tolerance at t = " +
                           std::to_string(t + h));
    }
    const bool last = step + 1 == result.steps;
    if (!last && options.snapshot_every > 0 && (step + 1) % options.snapshot_every == 0) record(t + h);
    if (last) record(t_end);
  }
  return result;
}

double pre_coupling_wigner(double q, double p, const SimParams& params, const StateInit& state) {
  params.validate();
  const double sigma = state_sigma(state);
  detail::require_positive(sigma, "sigma");
  const double s2 = sigma * sigma;
  const double h2 = params.hbar * params.hbar;
  const double vacuum = h2 / (4.0 * s2);
  const double thermal = state_prep(state) == Prep::BathTemp ? params.m * params.kT : 0.0;
  const double var_p = vacuum + thermal;
  const auto packet = [&](double dq, double pp) {
    return std::exp(-dq * dq / (2.0 * s2) - pp * pp / (2.0 * var_p)) / (2.0 * pi * sigma * std::sqrt(var_p));
  };
  if (const auto* g = std::get_if<GaussianInit>(&state)) return packet(q - g->x0, p);

  const CatInit& cat = std::get<CatInit>(state);
  // thermal smearing in p of the fringe cos(p d / hbar)
  const double k = cat.d / params.hbar;
  const double fringe_k = k * vacuum / var_p;
  const double fringe_damp = std::exp(-k * k * vacuum * thermal / (2.0 * var_p));
  return 0.5 * cat.norm() *
         (packet(q - 0.5 * cat.d, p) + packet(q + 0.5 * cat.d, p) +
          2.0 * fringe_damp * packet(q, p) * std::cos(fringe_k * p));
}

PhaseSpaceGrid post_squeeze_grid(const GridSpec& spec, const SimParams& params, const StateInit& state) {
  const double kick = params.m * params.gamma;
  return PhaseSpaceGrid::sample(
      spec, [&](double q, double p) { return pre_coupling_wigner(q, p + kick * q, params, state); });
}

GridSpec covering_grid(const SimParams& params, const StateInit& state, double t_end, std::size_t nq,
                       std::size_t np, double widths) {
  detail::require_time(t_end);
  const double sigma = state_sigma(state);
  const Prep prep = state_prep(state);
  const auto* cat = std::get_if<CatInit>(&state);
  const double x0 = cat ? 0.5 * cat->d : std::get<GaussianInit>(state).x0;

  GridSpec spec;
  spec.nq = nq;
  spec.np = np;
  spec.q_min = spec.p_min = std::numeric_limits<double>::infinity();
  spec.q_max = spec.p_max = -std::numeric_limits<double>::infinity();
  constexpr int kSamples = 64;
  for (int k = 0; k <= kSamples; ++k) {
    const double t = t_end * k / kSamples;
    const SecondMoments a = second_moments(t, params, sigma, prep);
    const PhasePoint c = mean_trajectory(t, params, x0);
    const double wq = widths * std::sqrt(a.a11);
    const double wp = widths * std::sqrt(a.a22);
    spec.q_min = std::min(spec.q_min, c.q - wq);
    spec.q_max = std::max(spec.q_max, c.q + wq);
    spec.p_min = std::min(spec.p_min, c.p - wp);
    spec.p_max = std::max(spec.p_max, c.p + wp);
    if (cat) {
      spec.q_min = std::min(spec.q_min, -c.q - wq);
      spec.q_max = std::max(spec.q_max, -c.q + wq);
      spec.p_min = std::min(spec.p_min, -c.p - wp);
      spec.p_max = std::max(spec.p_max, -c.p + wp);
    }
  }
  if (cat) {
    const double qh = std::max(-spec.q_min, spec.q_max);
    const double ph = std::max(-spec.p_min, spec.p_max);
    spec.q_min = -qh;
    spec.q_max = qh;
    spec.p_min = -ph;
    spec.p_max = ph;
  }
  spec.validate();
  return spec;
}

}  // namespace qbm
