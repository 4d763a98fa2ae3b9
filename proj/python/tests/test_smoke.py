# Copyright 2026 The qfit Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import qfit


def worked_problem():
    f = np.array([[1.0], [1.0]]) / math.sqrt(2.0)
    y = np.array([0.0, 1.0])
    return qfit.normalize(f.astype(complex), y.astype(complex))


def test_linear_algebra():
    f = np.array([[1.0], [1.0]], dtype=complex)
    np.testing.assert_allclose(qfit.pseudoinverse(f), [[0.5, 0.5]], atol=1e-12)
    h = qfit.embed(f)
    assert h.shape == (3, 3)
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-math.sqrt(2), 0, math.sqrt(2)], atol=1e-12)
    assert qfit.condition_number(np.diag([1.0, 0.5]).astype(complex)) == pytest.approx(2.0)


def test_classical_fit_worked_instance():
    f = np.array([[1.0], [1.0]], dtype=complex) / math.sqrt(2.0)
    sol = qfit.classical_fit(f, np.array([0.0, 1.0], dtype=complex))
    assert sol["lambda"][0].real == pytest.approx(1 / math.sqrt(2))
    assert sol["residual_energy"] == pytest.approx(0.5)


def test_run_worked_instance():
    report = qfit.run(worked_problem(), T=8, t0=4 * math.pi, window="rectangular",
                      shots=10000, seed=1)
    result = report["result"]
    assert result["exactOverlapSq"] == pytest.approx(0.5)
    assert abs(result["overlapSqEstimate"] - 0.5) < 0.03
    assert report["algorithm1"]["fidelity"] > 1 - 1e-8


def test_generate_learn_and_replay_are_deterministic():
    problem = qfit.generate(12, 6, planted=[1, 4], mass=0.97, seed=3)
    assert problem == qfit.generate(12, 6, planted=[1, 4], mass=0.97, seed=3)
    report = qfit.learn(problem, 2, T=128, shots=500, seed=5)
    assert report["result"]["recoveredSupport"] == [1, 4]
    assert json.dumps(qfit.replay(report)) == json.dumps(report)


def test_phase_estimation_pass():
    out = qfit.apply_hermitian(np.array([[1.0]], dtype=complex), np.array([0, 1], dtype=complex),
                               "multiply", 8, 4 * math.pi, 1.0, "rectangular")
    np.testing.assert_allclose(np.abs(out["output"]), [1.0, 0.0], atol=1e-10)
    assert out["flag_probability"] == pytest.approx(1.0)


def test_sampling_helpers():
    a = np.array([1, 0], dtype=complex)
    b = np.array([1, 1], dtype=complex) / math.sqrt(2)
    assert qfit.swap_test(a, b, shots=100, seed=2)["exactPOne"] == pytest.approx(0.25)
    assert qfit.plan_budget(4, 0.05) == (36, 1600)
    state = np.array([1, 1j], dtype=complex) / math.sqrt(2)
    rec = qfit.tomography(state, 0.05, seed=4)
    assert abs(np.vdot(rec, state)) ** 2 > 0.99


def test_cost_example():
    assert qfit.cost(1024, s=2, kappa=2, epsilon=0.1)["result"]["queries"] == pytest.approx(51200)


def test_errors_carry_codes():
    with pytest.raises(qfit.QfitError) as info:
        qfit.pseudoinverse(np.ones((2, 2), dtype=complex))
    assert info.value.code == "singular"
    with pytest.raises(qfit.QfitError) as info:
        qfit.run(worked_problem(), T=8, t0=100.0)
    assert info.value.code == "aliasing"
