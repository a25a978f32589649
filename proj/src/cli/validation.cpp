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

#include "qbm/validation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <string>

#include "qbm/cat.hpp"
#include "qbm/densmat.hpp"
#include "qbm/fokker_planck.hpp"
#include "qbm/gaussian.hpp"
#include "qbm/oracle.hpp"

namespace qbm {

double ValidationSettings::resolved_sigma() const {
  return sigma > 0.0 ? sigma : 0.25 * params.thermal_wavelength();
}

double ValidationSettings::resolved_d() const { return d > 0.0 ? d : 10.0 * params.thermal_wavelength(); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CheckResult bounded(std::string name, double error, double tolerance, std::string note = {}) {
  return CheckResult{std::move(name), error, tolerance, error <= tolerance, std::move(note)};
}

// Runs body, turning an exception into a single failed check.
void guarded(std::vector<CheckResult>& out, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.push_back(CheckResult{name, kInf, 0.0, false, e.what()});
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

double relative(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

std::string t_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace

std::vector<CheckResult> check_purity_curve(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const auto start = std::chrono::steady_clock::now();
  const double sigma = s.resolved_sigma();
  const StateInit packet = GaussianInit{0.0, sigma, Prep::ZeroTemp};
  guarded(out, "purity.initial", [&] {
    out.push_back(bounded("purity.initial", std::abs(purity(0.0, s.params, packet) - 1.0), 1e-12));
  });
  guarded(out, "purity.slope", [&] {
    // second-order one-sided difference
    const double h = 1e-5 / s.params.gamma;
    const double slope =
        (-3.0 * purity(0.0, s.params, packet) + 4.0 * purity(h, s.params, packet) - purity(2.0 * h, s.params, packet)) /
        (2.0 * h);
    const double lam = s.params.thermal_wavelength();
    const double reference = (1.0 - 4.0 * sigma * sigma / (lam * lam)) * s.params.gamma;
    out.push_back(bounded("purity.slope", std::abs(slope - reference), 1e-3 * s.params.gamma,
                          "slope " + t_label(slope) + " vs " + t_label(reference)));
  });
  guarded(out, "purity.exceeds_one", [&] {
    double best = 0.0;
    for (double gt : linspace(0.0, 0.5, 400)) {
      if (gt > 0.0) best = std::max(best, purity(gt / s.params.gamma, s.params, packet));
    }
    // passes only on a strict excess
    out.push_back(CheckResult{"purity.exceeds_one", 1.0 - best, 0.0, best > 1.0, "max purity " + t_label(best)});
  });
  out.push_back(bounded("purity.runtime_s", seconds_since(start), 1.0));
  return out;
}

std::vector<CheckResult> check_interference_curve(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const auto start = std::chrono::steady_clock::now();
  const double sigma = s.resolved_sigma();
  const double d = s.resolved_d();
  const double lam = s.params.thermal_wavelength();
  const double scale = lam * lam / (d * d);
  const CatInit zero{d, sigma, Prep::ZeroTemp};
  const CatInit bath{d, sigma, Prep::BathTemp};
  guarded(out, "interference.zero_initial", [&] {
    out.push_back(bounded("interference.zero_initial", std::abs(interference_measure(0.0, s.params, zero).a_of_t), 0.0));
  });
  guarded(out, "interference.bath_initial", [&] {
    const double scaled = interference_measure(0.0, s.params, bath).a_of_t * scale;
    const double reference = 1.0 / (2.0 + 8.0 * sigma * sigma / (lam * lam));
    out.push_back(bounded("interference.bath_initial", std::abs(scaled - reference), 1e-9,
                          t_label(scaled) + " vs " + t_label(reference)));
  });
  guarded(out, "interference.zero_slope", [&] {
    const auto gts = linspace(0.0, 0.01, 101);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double gt : gts) {
      const double y = interference_measure(gt / s.params.gamma, s.params, zero).a_of_t * scale;
      sx += gt;
      sy += y;
      sxx += gt * gt;
      sxy += gt * y;
    }
    const double n = static_cast<double>(gts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.push_back(bounded("interference.zero_slope", std::abs(slope - 1.0), 2e-2, "slope " + t_label(slope)));
  });
  out.push_back(bounded("interference.runtime_s", seconds_since(start), 1.0));
  return out;
}

namespace {

GridSpec window(double qc, double pc, double q_half, double p_half, std::size_t n) {
  GridSpec g;
  g.q_min = qc - q_half;
  g.q_max = qc + q_half;
  g.p_min = pc - p_half;
  g.p_max = pc + p_half;
  g.nq = g.np = n;
  return g;
}

double wigner_mismatch(const WignerTransform& w, const std::function<double(double, double)>& exact) {
  const GridSpec& g = w.grid.spec();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.nq; ++i) {
    for (std::size_t j = 0; j < g.np; ++j) {
      worst = std::max(worst, std::abs(w.grid(i, j) - exact(g.q(i), g.p(j))));
    }
  }
  return worst;
}

double rho_mismatch(const CharSampler& sampler, double p_half, double half, const SimParams& params,
                    const std::function<std::complex<double>(double, double)>& exact) {
  const auto xs = linspace(-half, half, 41);
  double worst = 0.0;
  for (double x : xs) {
    for (double xp : xs) {
      const auto q = rho_quadrature(sampler, x, xp, p_half, params.hbar);
      worst = std::max(worst, std::abs(q.value - exact(x, xp)));
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckResult> check_transforms(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const SimParams& p = s.params;
  const double sigma = s.resolved_sigma();
  const double d = s.resolved_d();
  for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
    for (double gt : {0.0, 0.05, 1.0}) {
      const double t = gt / p.gamma;
      const std::string tag = std::string(".") + to_string(prep) + ".t=" + t_label(gt);
      const GaussianInit packet{s.x0, sigma, prep};
      const CatInit cat{d, sigma, prep};
      const SecondMoments a = second_moments(t, p, sigma, prep);
      const double wq = 6.0 * std::sqrt(a.a11);
      const double wp = 6.0 * std::sqrt(a.a22);

      guarded(out, "transform.wigner.gaussian" + tag, [&] {
        const PhasePoint c = mean_trajectory(t, p, s.x0);
        const auto w = char_to_wigner(char_sampler(t, p, packet), char_box(t, p, packet), window(c.q, c.p, wq, wp, 64),
                                      p.hbar);
        const double err = wigner_mismatch(w, [&](double q, double pp) { return wigner_gaussian(q, pp, t, p, packet); });
        out.push_back(bounded("transform.wigner.gaussian" + tag, err, 1e-8));
      });
      guarded(out, "transform.wigner.cat" + tag, [&] {
        const PhasePoint c = mean_trajectory(t, p, 0.5 * d);
        const auto w = char_to_wigner(char_sampler(t, p, cat), char_box(t, p, cat),
                                      window(0.0, 0.0, std::abs(c.q) + wq, std::abs(c.p) + wp, 64), p.hbar);
        const double err = wigner_mismatch(w, [&](double q, double pp) { return wigner_cat(q, pp, t, p, cat); });
        out.push_back(bounded("transform.wigner.cat" + tag, err, 1e-8));
      });
      guarded(out, "transform.rho.gaussian" + tag, [&] {
        const GaussianInit centred{0.0, sigma, prep};
        const double half = 5.0 * std::sqrt(a.a11);
        const double err = rho_mismatch(char_sampler(t, p, centred), char_box(t, p, centred).p_half, half, p,
                                        [&](double x, double xp) { return rho_element_gaussian(x, xp, t, p, centred); });
        out.push_back(bounded("transform.rho.gaussian" + tag, err, 1e-7));
      });
      guarded(out, "transform.rho.cat" + tag, [&] {
        const double half = std::abs(mean_trajectory(t, p, 0.5 * d).q) + 5.0 * std::sqrt(a.a11);
        const double err = rho_mismatch(char_sampler(t, p, cat), char_box(t, p, cat).p_half, half, p,
                                        [&](double x, double xp) { return rho_element_cat(x, xp, t, p, cat); });
        out.push_back(bounded("transform.rho.cat" + tag, err, 1e-7));
      });
    }
  }
  return out;
}

std::vector<CheckResult> check_purity_biconditional(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  guarded(out, "biconditional.disagreements", [&] {
    const double sigma = s.resolved_sigma();
    const StateInit packet = GaussianInit{0.0, sigma, Prep::ZeroTemp};
    const double h2 = s.params.hbar * s.params.hbar;
    const auto gts = linspace(0.0, 2.0, 1000);
    std::vector<std::array<bool, 3>> flags;
    flags.reserve(gts.size());
    for (double gt : gts) {
      const double t = gt / s.params.gamma;
      const SecondMoments a = second_moments(t, s.params, sigma, Prep::ZeroTemp);
      flags.push_back({purity(t, s.params, packet) > 1.0, negativity_witness(t, s.params, sigma) < 0.0,
                       4.0 * a.det / h2 < 1.0});
    }
    const auto changes_at = [&](std::size_t i) {  // any predicate flips between i and i+1
      return i + 1 < flags.size() && flags[i] != flags[i + 1];
    };
    std::size_t far = 0;
    std::size_t near = 0;
    std::size_t positive = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
      const auto& f = flags[i];
      positive += f[0] ? 1 : 0;
      if (f[0] == f[1] && f[1] == f[2]) continue;
      const bool close = changes_at(i) || (i > 0 && changes_at(i - 1));
      (close ? near : far) += 1;
    }
    out.push_back(bounded("biconditional.disagreements", static_cast<double>(far), 0.0,
                          std::to_string(positive) + " points with purity > 1, " + std::to_string(near) +
                              " disagreements at sign changes"));
    out.push_back(CheckResult{"biconditional.nontrivial", positive > 0 ? 0.0 : 1.0, 0.0, positive > 0,
                              "the scan must contain purity > 1"});
  });
  return out;
}

std::vector<CheckResult> check_coefficients(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const SimParams& p = s.params;
  const double sigma = s.resolved_sigma();
  double e_gamma = 0.0, e_omega = 0.0, e_dpp = 0.0, e_dqp = 0.0, e_probe = 0.0;
  guarded(out, "coefficients", [&] {
    for (double gt : linspace(0.01, 5.0, 50)) {
      const double t = gt / p.gamma;
      const ExtractedCoefficients a = extract_coefficients(t, p, {sigma, 2.0 * sigma});
      const ExtractedCoefficients b = extract_coefficients(t, p, {3.0 * sigma, 0.5 * sigma});
      e_gamma = std::max(e_gamma, std::abs(a.gamma_coeff - 0.5 * p.gamma));
      e_omega = std::max(e_omega, std::abs(a.omega2));
      e_dpp = std::max(e_dpp, std::abs(a.d_pp - p.m * p.gamma * p.kT));
      e_dqp = std::max(e_dqp, std::abs(a.d_qp));
      e_probe = std::max({e_probe, std::abs(a.gamma_coeff - b.gamma_coeff), std::abs(a.omega2 - b.omega2),
                          std::abs(a.d_pp - b.d_pp), std::abs(a.d_qp - b.d_qp)});
    }
    out.push_back(bounded("coefficients.gamma", e_gamma, 1e-6));
    out.push_back(bounded("coefficients.omega2", e_omega, 1e-6));
    out.push_back(bounded("coefficients.d_pp", e_dpp, 1e-6));
    out.push_back(bounded("coefficients.d_qp", e_dqp, 1e-6));
    out.push_back(bounded("coefficients.probe_spread", e_probe, 1e-6));
  });
  return out;
}

namespace {

FokkerPlanckResult run_fp(const SimParams& p, const StateInit& state, double t_end, std::size_t nq, std::size_t np,
                          double mass_tolerance) {
  const GridSpec spec = covering_grid(p, state, t_end, nq, np);
  PhaseSpaceGrid w = post_squeeze_grid(spec, p, state);
  w.normalize();
  FokkerPlanckOptions opts;
  opts.mass_tolerance = mass_tolerance;
  const CoefficientSource source = extracted_coefficients(p);
  opts.coefficients = source;
  double limit = kInf;
  for (double t : linspace(0.0, t_end, 5)) limit = std::min(limit, max_stable_dt(spec, p, source(t)));
  return fokker_planck_integrate(w, p, t_end, 0.9 * limit, opts);
}

// Log-quadratic fit through the 3x3 neighbourhood of the largest value with q index above i_from.
double fitted_peak(const PhaseSpaceGrid& g, std::size_t i_from) {
  const GridSpec& spec = g.spec();
  std::size_t bi = i_from, bj = 1;
  double best = -kInf;
  for (std::size_t i = std::max<std::size_t>(i_from, 1); i + 1 < spec.nq; ++i) {
    for (std::size_t j = 1; j + 1 < spec.np; ++j) {
      if (g(i, j) > best) {
        best = g(i, j);
        bi = i;
        bj = j;
      }
    }
  }
  const auto l = [&](std::size_t i, std::size_t j) { return std::log(std::max(g(i, j), 1e-300)); };
  const double gq = 0.5 * (l(bi + 1, bj) - l(bi - 1, bj));
  const double gp = 0.5 * (l(bi, bj + 1) - l(bi, bj - 1));
  const double hqq = l(bi + 1, bj) - 2.0 * l(bi, bj) + l(bi - 1, bj);
  const double hpp = l(bi, bj + 1) - 2.0 * l(bi, bj) + l(bi, bj - 1);
  const double hqp = 0.25 * (l(bi + 1, bj + 1) - l(bi + 1, bj - 1) - l(bi - 1, bj + 1) + l(bi - 1, bj - 1));
  const double det = hqq * hpp - hqp * hqp;
  if (!(det > 0.0) || !(hqq < 0.0)) return best;
  const double dq = -(hpp * gq - hqp * gp) / det;
  const double dp = -(hqq * gp - hqp * gq) / det;
  return std::exp(l(bi, bj) + gq * dq + gp * dp + 0.5 * (hqq * dq * dq + 2.0 * hqp * dq * dp + hpp * dp * dp));
}

}  // namespace

std::vector<CheckResult> check_fokker_planck(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const auto start = std::chrono::steady_clock::now();
  const SimParams& p = s.params;
  const double sigma = s.resolved_sigma();
  const std::size_t n = s.fp_grid;
  const GaussianInit packet{s.x0, sigma, Prep::ZeroTemp};

  guarded(out, "fp.moments", [&] {
    const double t = 1.0 / p.gamma;
    const FokkerPlanckResult r = run_fp(p, packet, t, n, n, 1e-6);
    const GridMoments m = r.snapshots.back().grid.moments();
    const SecondMoments a = second_moments(t, p, packet);
    const PhasePoint c = mean_trajectory(t, p, s.x0);
    const double err = std::max({relative(m.mean_q, c.q), relative(m.mean_p, c.p), relative(m.var_q, a.a11),
                                 relative(m.var_p, a.a22), relative(m.cov_qp, a.a12)});
    out.push_back(bounded("fp.moments", err, 1e-2, std::to_string(r.steps) + " steps"));
    out.push_back(bounded("fp.mass", r.max_mass_drift, 1e-6));
    out.push_back(bounded("fp.negativity", std::max(0.0, -r.min_ratio), 1e-3));
  });
  guarded(out, "fp.mass_long", [&] {
    // a drift beyond 1e-6 throws inside the integrator
    const FokkerPlanckResult r = run_fp(p, packet, 3.0 / p.gamma, n, n, 1e-6);
    out.push_back(bounded("fp.mass_long", r.max_mass_drift, 1e-6, "t_end = 3/gamma"));
  });
  guarded(out, "fp.cat_peak_ratio", [&] {
    const CatInit cat{s.resolved_d(), sigma, Prep::ZeroTemp};
    const double tau = decoherence_time(p, cat.d);
    // odd sizes keep the origin on a node; p needs the finer spacing to resolve the fringes
    const std::size_t nq = n | 1U;
    const std::size_t np = (4 * n) | 1U;
    const FokkerPlanckResult r = run_fp(p, cat, tau, nq, np, 1e-6);
    const PhaseSpaceGrid& g = r.snapshots.back().grid;
    const double ratio = g((nq - 1) / 2, (np - 1) / 2) / fitted_peak(g, (nq - 1) / 2 + 1);
    const double reference = 2.0 * std::exp(-interference_measure(tau, p, cat).a_of_t);
    out.push_back(bounded("fp.cat_peak_ratio", relative(ratio, reference), 5e-2,
                          t_label(ratio) + " vs " + t_label(reference)));
  });
  out.push_back(bounded("fp.runtime_s", seconds_since(start), 180.0));
  return out;
}

namespace {

double interference_area(double t, const SimParams& p, const CatInit& cat) {
  const SecondMoments a = second_moments(t, p, cat.sigma, cat.prep);
  const double q_half = 10.0 * std::sqrt(a.a11);
  const double p_half = 10.0 * std::sqrt(a.a22);
  constexpr std::size_t n = 801;
  const double hq = 2.0 * q_half / (n - 1);
  const double hp = 2.0 * p_half / (n - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    const double q = -q_half + hq * static_cast<double>(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      sum += wi * wj * wigner_cat_terms(q, -p_half + hp * static_cast<double>(j), t, p, cat).interference;
    }
  }
  return sum * hq * hp;
}

}  // namespace

std::vector<CheckResult> check_decoherence(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const SimParams& p = s.params;
  const double sigma = s.resolved_sigma();
  const double d = s.resolved_d();
  for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
    const CatInit cat{d, sigma, prep};
    const std::string tag = std::string(".") + to_string(prep);
    guarded(out, "decoherence.attenuation" + tag, [&] {
      const double t = 1e-3 / p.gamma;
      // compared through the exponents; the values themselves sit close to 1
      const double full = -std::log(attenuation(t, p, cat));
      const double short_form = -std::log(attenuation_shorttime(t, p, cat));
      out.push_back(bounded("decoherence.attenuation" + tag, relative(full, short_form), 2e-2,
                            "exponent " + t_label(full) + " vs " + t_label(short_form)));
    });
    // the separation under test, plus one whose overlap is not negligible
    for (double dd : {d, p.thermal_wavelength()}) {
      const CatInit c{dd, sigma, prep};
      const std::string name = "decoherence.area" + tag + (dd == d ? "" : ".d=lambda");
      guarded(out, name, [&] {
        const double tau = decoherence_time(p, dd);
        const double expected = c.norm() * std::exp(-c.overlap_exponent());
        double worst = 0.0;
        for (double t : {0.0, tau, 10.0 * tau}) worst = std::max(worst, std::abs(interference_area(t, p, c) - expected));
        out.push_back(bounded(name, worst, 1e-6, "expected " + t_label(expected)));
      });
    }
  }
  return out;
}

std::vector<CheckResult> check_limits(const ValidationSettings& s) {
  std::vector<CheckResult> out;
  const double sigma = s.resolved_sigma();
  guarded(out, "limits.spreading", [&] {
    SimParams slow = s.params;
    slow.gamma = 1e-6;
    const double s2 = sigma * sigma;
    const double m = slow.m;
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
      const double free = s2 + slow.hbar * slow.hbar * t * t / (4.0 * m * m * s2);
      worst = std::max(worst, relative(second_moments(t, slow, sigma, Prep::ZeroTemp).a11, free));
    }
    out.push_back(bounded("limits.spreading", worst, 1e-4, "gamma = 1e-6"));
  });
  guarded(out, "limits.cat_d0", [&] {
    double worst = 0.0;
    for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
      const CatInit cat{0.0, sigma, prep};
      const GaussianInit packet{0.0, sigma, prep};
      for (double gt : {0.0, 0.05, 1.0}) {
        const double t = gt / s.params.gamma;
        const SecondMoments a = second_moments(t, s.params, packet);
        for (double q : linspace(-5.0 * std::sqrt(a.a11), 5.0 * std::sqrt(a.a11), 41)) {
          for (double pp : linspace(-5.0 * std::sqrt(a.a22), 5.0 * std::sqrt(a.a22), 41)) {
            worst = std::max(worst, std::abs(wigner_cat(q, pp, t, s.params, cat) -
                                             wigner_gaussian(q, pp, t, s.params, packet)));
          }
        }
      }
    }
    out.push_back(bounded("limits.cat_d0", worst, 1e-12));
  });
  guarded(out, "limits.equipartition", [&] {
    const SimParams& p = s.params;
    double worst = 0.0;
    for (Prep prep : {Prep::ZeroTemp, Prep::BathTemp}) {
      const SecondMoments a = second_moments(50.0 / p.gamma, p, sigma, prep);
      worst = std::max(worst, relative(a.a22 / (p.m * p.m), p.kT / p.m));
    }
    out.push_back(bounded("limits.equipartition", worst, 1e-9, "gamma t = 50"));
  });
  return out;
}

const std::vector<CheckGroup>& check_groups() {
  static const std::vector<CheckGroup> groups = {
      {"purity", check_purity_curve},       {"interference", check_interference_curve},
      {"transforms", check_transforms},     {"biconditional", check_purity_biconditional},
      {"coefficients", check_coefficients}, {"fp", check_fokker_planck},
      {"decoherence", check_decoherence},   {"limits", check_limits},
  };
  return groups;
}

}  // namespace qbm
