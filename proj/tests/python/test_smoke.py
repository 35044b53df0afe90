# Copyright 2026 The qpsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import qpsim

H_CIRCUIT = json.dumps({
    "d": 2,
    "wires": 1,
    "inputs": ["zero"],
    "gates": [{"name": "H", "wires": [0]}],
    "effects": ["proj0"],
})


def test_version():
    assert qpsim.__version__


def test_round_trip_and_oracle():
    c = qpsim.Circuit.from_json(H_CIRCUIT)
    assert c.num_wires == 1 and c.num_gates == 1
    again = qpsim.Circuit.from_json(c.to_json())
    assert again.to_json() == c.to_json()
    assert qpsim.exact_probability(c) == pytest.approx(0.5, abs=1e-12)


def test_anchors():
    a = qpsim.toffoli_anchor()
    assert a["toffoli"] == pytest.approx(2.0, abs=1e-10)
    assert a["t_fourth_power"] == pytest.approx(4.0, abs=1e-10)
    assert qpsim.required_samples(0.01, 0.05, 1) == 73778


def test_duality():
    assert qpsim.check_duality("wigner", [1.0, 2.0, 0.5, 3.0]) < 1e-9
    assert qpsim.check_duality("rotated_pauli", [0.3, -1.2, 2.0]) < 1e-9


def test_negativity_and_merge():
    c = qpsim.gen_clifford_t(4, 30, 3, seed=7)
    assert c.num_gates == 33
    before = qpsim.circuit_negativity(c)
    merged = qpsim.merge_circuit(c, 3)
    assert merged.num_gates <= c.num_gates
    assert max(len(s) for s in merged.supports) <= 3
    assert qpsim.circuit_negativity(merged) <= before + 1e-9
    report = qpsim.negativity_report(c)
    assert report["total_log2_negativity"] == pytest.approx(before, abs=1e-12)
    clifford = qpsim.gen_clifford_t(3, 20, 0, seed=1)
    assert qpsim.circuit_negativity(clifford) == pytest.approx(0.0, abs=1e-10)


def test_optimise_and_estimate():
    c = qpsim.merge_circuit(qpsim.gen_haar_circuit(3, 4, seed=2), 2)
    frames, trace = qpsim.optimise_frames(c, "wigner", ell=1, hops=1, seed=3)
    assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))
    assert qpsim.circuit_negativity(c, "wigner", frames) == pytest.approx(trace[-1], abs=1e-9)
    rep = qpsim.estimate(c, 200000, seed=4, family="wigner", frames=frames)
    assert rep["samples"] == 200000
    p = qpsim.exact_probability(c)
    assert abs(rep["p_est"] - p) < 6 * rep["std_error"] + 1e-3
    again = qpsim.estimate(c, 200000, seed=4, family="wigner", frames=frames, workers=3)
    assert again["p_est"] == rep["p_est"]


def test_validation_errors():
    with pytest.raises(ValueError):
        qpsim.Circuit.from_json("{}")
    with pytest.raises(qpsim.ValidationError):
        qpsim.required_samples(0.0, 0.1, 1)
    with pytest.raises(ValueError):
        qpsim.circuit_negativity(qpsim.Circuit.from_json(H_CIRCUIT), "bloch")


def test_run_experiment(tmp_path):
    files = qpsim.run_experiment({"name": "toffoli_anchor", "parameters": {"seed": 1}}, tmp_path)
    assert any(f.endswith("toffoli_anchor.json") for f in files)
    doc = json.loads((tmp_path / "toffoli_anchor.json").read_text())
    assert math.isclose(doc["toffoli"], 2.0, abs_tol=1e-10)
