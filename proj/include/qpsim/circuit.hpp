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

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qpsim/numerics.hpp"

namespace qpsim {

/// A unitary acting on an ordered list of wires.
///
/// `name` is set for gates resolved from the named library (and is what gets serialized);
/// explicit or merged gates leave it empty and carry their matrix instead.
struct Gate {
    CMatrix matrix;
    WireSupport support;
    std::string label;
    std::string name;
    double phase = 0.0;

    size_t arity() const {
        return support.size();
    }
    bool operator==(const Gate &) const = default;
};

/// Single-qudit state or effect. `name` is empty for explicit matrices.
struct LocalOperator {
    CMatrix matrix;
    std::string name;

    bool operator==(const LocalOperator &) const = default;
};

/// Product-state-in, product-effect-out circuit over `num_wires` qudits of dimension `d`.
struct Circuit {
    size_t d = 2;
    size_t num_wires = 0;
    std::vector<LocalOperator> inputs;
    std::vector<Gate> gates;
    std::vector<LocalOperator> effects;

    bool operator==(const Circuit &) const = default;
};

/// Library gate by name (X, Y, Z, H, S, SDG, T, TDG, PHASE, CX, CZ, SWAP, CCX and aliases).
/// Throws ValidationError for unknown names.
Gate library_gate(std::string_view name, WireSupport wires, double phase = 0.0);

/// Gate from an explicit matrix; checks unitarity and arity.
Gate matrix_gate(CMatrix matrix, WireSupport wires, std::string label = "MATRIX");

LocalOperator named_state(std::string_view name);
LocalOperator named_effect(std::string_view name);

/// Checks every structural and physical invariant of a circuit; throws ValidationError.
void validate_circuit(const Circuit &c);

/// Parses the JSON circuit document. Errors carry the offending field path.
Circuit parse_circuit(std::string_view text);

/// Canonical JSON text: sorted keys, shortest round-trip floats.
std::string serialize_circuit(const Circuit &c);

/// `num_cliffords` gates drawn uniformly from {H, S, CX, CZ} uniformly interleaved with `num_t`
/// T gates; all inputs |0> and all effects |0><0|.
Circuit gen_clifford_t(size_t num_wires, size_t num_cliffords, size_t num_t, std::mt19937_64 &rng);

/// `num_gates` two-qubit Haar-random gates on uniformly random distinct wire pairs.
Circuit gen_haar_circuit(size_t num_wires, size_t num_gates, std::mt19937_64 &rng);

/// U_L ... U_1 on the full space. Refuses circuits wider than 10 wires.
CMatrix circuit_unitary(const Circuit &c);

/// Empty circuit on `num_wires` qubits with |0> inputs and |0><0| effects.
Circuit blank_circuit(size_t num_wires);

}  // namespace qpsim
