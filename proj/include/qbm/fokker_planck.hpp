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

#include <cstddef>
#include <functional>
#include <vector>

#include "qbm/cat.hpp"
#include "qbm/grid.hpp"
#include "qbm/oracle.hpp"

namespace qbm {

using CoefficientSource = std::function<ExtractedCoefficients(double t)>;

/// Coefficients extracted at every stage time with probe widths lambda_th and 2 lambda_th.
CoefficientSource extracted_coefficients(const SimParams& params);

struct FokkerPlanckOptions {
  /// Store a snapshot every this many steps (0: initial and final only).
  std::size_t snapshot_every = 0;
  /// Allowed |cell mass - initial cell mass|, relative to the initial mass.
  double mass_tolerance = 1e-6;
  /// Flag (not fail) when min W < -ratio * max W at any snapshot.
  double negativity_ratio = 1e-3;
  /// Defaults to extracted_coefficients(params).
  CoefficientSource coefficients;
};

struct Snapshot {
  double t = 0.0;
  PhaseSpaceGrid grid;
};

struct FokkerPlanckResult {
  std::vector<Snapshot> snapshots;
  std::size_t steps = 0;
  double dt = 0.0;
  double max_mass_drift = 0.0;
  double min_ratio = 0.0;  ///< most negative min W / max W seen
  bool negativity_flagged = false;
};

/// Largest time step for which classical RK4 is stable on this grid, given
/// the coefficients at time t.
double max_stable_dt(const GridSpec& grid, const SimParams& params, const ExtractedCoefficients& coefficients);

/**
 * @brief Method-of-lines integration of the phase-space master equation.
 *
 * Finite-volume form with zero-flux boundaries: third-order upwind-biased
 * reconstruction for the drift fluxes p/m (along q) and -m Omega^2 q - 2 Gamma p
 * (along p), fourth-order face gradients for d_pp and central cross
 * differences for d_qp, advanced with classical RK4. The step is shrunk to
 * t_end / ceil(t_end / dt).
 *
 * Throws NumericalError on a CFL violation, a non-finite value or a mass
 * drift beyond options.mass_tolerance.
 */
FokkerPlanckResult fokker_planck_integrate(const PhaseSpaceGrid& initial, const SimParams& params, double t_end,
                                           double dt, const FokkerPlanckOptions& options = {});

/// Wigner function of the uncoupled initial state (no squeeze).
double pre_coupling_wigner(double q, double p, const SimParams& params, const StateInit& state);

/// Post-squeeze initial grid W0(q, p + m gamma q) built from pre_coupling_wigner.
PhaseSpaceGrid post_squeeze_grid(const GridSpec& spec, const SimParams& params, const StateInit& state);

/// Grid covering +-widths standard deviations of every direct packet over [0, t_end].
/// Cat grids are symmetric about the origin.
GridSpec covering_grid(const SimParams& params, const StateInit& state, double t_end, std::size_t nq,
                       std::size_t np, double widths = 8.0);

}  // namespace qbm
