// Copyright 2026 The qpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "qpsim/circuit.hpp"

namespace qpsim {

/// Applies a k-qubit gate in place to the `targets` qubits of an n-qubit amplitude vector.
/// Qubit 0 is the most significant bit of the index.
void apply_gate_inplace(std::span<cplx> amps, size_t num_qubits, const CMatrix &gate, const WireSupport &targets);

/// Born probability Tr[U ρ U† E], propagated as a state vector.
/// Every input must be pure; limited to 12 wires.
double exact_probability_statevector(const Circuit &c);

/// Born probability via density-matrix evolution; accepts mixed inputs; limited to 6 wires.
double exact_probability_density(const Circuit &c);

/// Picks the state-vector path when all inputs are pure, the density-matrix path otherwise.
double exact_probability(const Circuit &c);

}  // namespace qpsim
