# Copyright 2026 The qbm Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import qbm

P1 = qbm.figure_params()
LAM = P1.thermal_wavelength()
SIGMA = LAM / 4


def test_params_and_validation():
    assert P1.kT == 5.0
    assert math.isclose(LAM, 1 / math.sqrt(5))
    with pytest.raises(ValueError):
        qbm.SimParams(m=-1.0)
    assert "kT=5" in repr(P1)


def test_fluctuation_moments():
    f = qbm.fluctuation_moments(1.0, P1)
    assert math.isclose(f.x2, 1.680912407245783, rel_tol=1e-13)
    assert math.isclose(f.xd2, 4.3233235838169365, rel_tol=1e-13)


def test_purity_and_witness():
    packet = qbm.GaussianInit(0.0, SIGMA)
    assert qbm.purity(0.0, P1, packet) == 1.0
    assert qbm.purity(0.03, P1, packet) > 1.0
    assert qbm.negativity_witness(0.03, P1, SIGMA) < 0.0
    assert math.isclose(qbm.purity_quadrature(0.5, P1, packet), qbm.purity(0.5, P1, packet), rel_tol=1e-6)


def test_cat_state():
    cat = qbm.CatInit(10 * LAM, SIGMA)
    assert qbm.interference_measure(0.0, P1, cat).a_of_t == 0.0
    bath = qbm.CatInit(10 * LAM, SIGMA, qbm.Prep.BathTemp)
    assert math.isclose(qbm.interference_measure(0.0, P1, bath).a_of_t / 100, 0.4, rel_tol=1e-12)
    assert math.isclose(qbm.wigner(0.0, 0.0, 0.0, P1, cat) / qbm.wigner(cat.d / 2, -cat.d / 2, 0.0, P1, cat), 2.0)


def test_wigner_grid_is_normalized():
    q = np.linspace(-1.0, 1.0, 201)
    p = np.linspace(-40.0, 40.0, 641)
    w = qbm.wigner_grid(q, p, 0.0, P1, qbm.GaussianInit(0.0, SIGMA))
    assert w.shape == (201, 641)
    assert math.isclose(np.trapezoid(np.trapezoid(w, p, axis=1), q), 1.0, rel_tol=1e-8)


def test_coefficients():
    c = qbm.extract_coefficients(1.0, P1, SIGMA, 2 * SIGMA)
    assert abs(c.gamma_coeff - 0.5) < 1e-6
    assert abs(c.d_pp - 5.0) < 1e-6


def test_fokker_planck_small_grid():
    r = qbm.fokker_planck(P1, qbm.GaussianInit(1.0, SIGMA), 0.2, nq=96, np=96)
    assert r["w"].shape == (96, 96)
    assert r["max_mass_drift"] < 1e-6
    mean = qbm.mean_trajectory(0.2, P1, 1.0)
    assert abs(r["moments"]["mean_q"] - mean.q) < 0.05


def test_cli_roundtrip():
    code, out, err = qbm.run_cli(["fig2", "--n", "3"])
    assert code == 0
    assert out.splitlines()[0] == "gamma_t,purity_eq5.9"
    code, _, _ = qbm.run_cli(["scan", "bogus"])
    assert code == 1


def test_validate_subset():
    results = qbm.validate(["purity", "coefficients"])
    assert results and all(passed for _, _, _, passed in results)
