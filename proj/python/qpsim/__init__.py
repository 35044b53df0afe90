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
"""Python bindings for the qpsim quasi-probability circuit simulator."""

import json

from ._qpsim import (
    Circuit,
    ValidationError,
    __version__,
    check_duality,
    circuit_negativity,
    exact_probability,
    gen_clifford_t,
    gen_haar_circuit,
    merge_circuit,
    optimise_frames,
    required_samples,
    toffoli_anchor,
)
from . import _qpsim


def negativity_report(circuit, family="rotated_pauli", frames=None):
    """Per-component negativities as a dict."""
    return json.loads(_qpsim.negativity_report_json(circuit, family, frames))


def estimate(circuit, samples, seed, family="rotated_pauli", frames=None, workers=1):
    """Signed Monte Carlo estimate; returns the report as a dict."""
    return json.loads(_qpsim.estimate_json(circuit, samples, seed, family, frames, workers))


def run_experiment(spec, out_dir):
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    return [str(p) for p in _qpsim.run_experiment(spec, str(out_dir))]


__all__ = [
    "Circuit",
    "ValidationError",
    "__version__",
    "check_duality",
    "circuit_negativity",
    "estimate",
    "exact_probability",
    "gen_clifford_t",
    "gen_haar_circuit",
    "merge_circuit",
    "negativity_report",
    "optimise_frames",
    "required_samples",
    "run_experiment",
    "toffoli_anchor",
]
