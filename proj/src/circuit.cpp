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

#include "qpsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"

namespace qpsim {

using json = nlohmann::json;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const cplx I{0.0, 1.0};

CMatrix permutation_matrix(size_t dim, auto &&map) {
    CMatrix m(dim, dim);
    for (size_t c = 0; c < dim; c++) {
        m(map(c), c) = 1.0;
    }
    return m;
}

std::string canonical_name(std::string_view name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (up == "S†" || up == "S_DAG" || up == "SDAG") {
        return "SDG";
    }
    if (up == "T†" || up == "T_DAG" || up == "TDAG") {
        return "TDG";
    }
    if (up == "CNOT") {
        return "CX";
    }
    if (up == "TOFFOLI") {
        return "CCX";
    }
    return up;
}

void check_local(const CMatrix &m, size_t d, const std::string &where) {
    if (m.rows() != d || m.cols() != d) {
        throw ValidationError(where + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    }
    if (!is_hermitian(m)) {
        throw ValidationError(where + ": operator is not Hermitian");
    }
}

// Eigenvalues of a 2x2 Hermitian matrix, ascending.
std::pair<double, double> eig2(const CMatrix &m) {
    double a = m(0, 0).real();
    double b = m(1, 1).real();
    double off = std::abs(m(0, 1));
    double mean = 0.5 * (a + b);
    double rad = std::hypot(0.5 * (a - b), off);
    return {mean - rad, mean + rad};
}

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError(where + ": matrix must be a non-empty array of rows");
    }
    size_t rows = j.size();
    size_t cols = j[0].is_array() ? j[0].size() : 0;
    std::vector<cplx> data;
    data.reserve(rows * cols);
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ValidationError(where + ": ragged matrix at row " + std::to_string(r));
        }
        for (size_t c = 0; c < cols; c++) {
            const json &e = j[r][c];
            if (e.is_number()) {
                data.emplace_back(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                data.emplace_back(e[0].get<double>(), e[1].get<double>());
            } else {
                throw ValidationError(
                    where + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be [re, im]");
            }
        }
    }
    return CMatrix(rows, cols, std::move(data));
}

LocalOperator local_from_json(const json &j, bool effect, const std::string &where) {
    if (j.is_string()) {
        try {
            return effect ? named_effect(j.get<std::string>()) : named_state(j.get<std::string>());
        } catch (const ValidationError &e) {
            throw ValidationError(where + ": " + e.what());
        }
    }
    return LocalOperator{matrix_from_json(j, where), ""};
}

json local_to_json(const LocalOperator &op) {
    if (!op.name.empty()) {
        return op.name;
    }
    return matrix_to_json(op.matrix);
}

}  // namespace

Gate library_gate(std::string_view raw_name, WireSupport wires, double phase) {
    std::string name = canonical_name(raw_name);
    CMatrix m;
    size_t arity = 1;
    if (name == "X") {
        m = {{0, 1}, {1, 0}};
    } else if (name == "Y") {
        m = {{0, -I}, {I, 0}};
    } else if (name == "Z") {
        m = {{1, 0}, {0, -1}};
    } else if (name == "H") {
        m = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    } else if (name == "S") {
        m = {{1, 0}, {0, I}};
    } else if (name == "SDG") {
        m = {{1, 0}, {0, -I}};
    } else if (name == "T") {
        m = {{1, 0}, {0, std::polar(1.0, std::numbers::pi / 4)}};
    } else if (name == "TDG") {
        m = {{1, 0}, {0, std::polar(1.0, -std::numbers::pi / 4)}};
    } else if (name == "PHASE") {
        m = {{1, 0}, {0, std::polar(1.0, phase)}};
    } else if (name == "CX") {
        arity = 2;
        m = permutation_matrix(4, [](size_t c) { return (c & 2) ? c ^ 1 : c; });
    } else if (name == "CZ") {
        arity = 2;
        m = CMatrix::identity(4);
        m(3, 3) = -1.0;
    } else if (name == "SWAP") {
        arity = 2;
        m = permutation_matrix(4, [](size_t c) { return ((c & 1) << 1) | (c >> 1); });
    } else if (name == "CCX") {
        arity = 3;
        m = permutation_matrix(8, [](size_t c) { return (c & 6) == 6 ? c ^ 1 : c; });
    } else {
        throw ValidationError("unknown gate name '" + std::string(raw_name) + "'");
    }
    if (wires.size() != arity) {
        throw ValidationError(
            "gate " + name + " acts on " + std::to_string(arity) + " wire(s), got " + std::to_string(wires.size()));
    }
    Gate g{std::move(m), std::move(wires), name, name, name == "PHASE" ? phase : 0.0};
    return g;
}

Gate matrix_gate(CMatrix matrix, WireSupport wires, std::string label) {
    if (!matrix.is_square() || matrix.rows() != ipow(2, wires.size())) {
        throw ValidationError("explicit gate matrix does not match its wire count");
    }
    if (!is_unitary(matrix)) {
        throw ValidationError("explicit gate matrix is not unitary");
    }
    return Gate{std::move(matrix), std::move(wires), std::move(label), "", 0.0};
}

LocalOperator named_state(std::string_view name) {
    CMatrix m;
    if (name == "zero") {
        m = {{1, 0}, {0, 0}};
    } else if (name == "one") {
        m = {{0, 0}, {0, 1}};
    } else if (name == "plus") {
        m = {{0.5, 0.5}, {0.5, 0.5}};
    } else if (name == "minus") {
        m = {{0.5, -0.5}, {-0.5, 0.5}};
    } else if (name == "magic_T") {
        cplx w = std::polar(0.5, std::numbers::pi / 4);
        m = {{0.5, std::conj(w)}, {w, 0.5}};
    } else {
        throw ValidationError("unknown state name '" + std::string(name) + "'");
    }
    return LocalOperator{std::move(m), std::string(name)};
}

LocalOperator named_effect(std::string_view name) {
    CMatrix m;
    if (name == "proj0") {
        m = {{1, 0}, {0, 0}};
    } else if (name == "proj1") {
        m = {{0, 0}, {0, 1}};
    } else if (name == "identity") {
        m = CMatrix::identity(2);
    } else {
        throw ValidationError("unknown effect name '" + std::string(name) + "'");
    }
    return LocalOperator{std::move(m), std::string(name)};
}

void validate_circuit(const Circuit &c) {
    if (c.d != 2) {
        throw ValidationError("only qubit circuits (d = 2) are supported");
    }
    if (c.num_wires == 0) {
        throw ValidationError("circuit needs at least one wire");
    }
    if (c.inputs.size() != c.num_wires || c.effects.size() != c.num_wires) {
        throw ValidationError("inputs and effects must list one operator per wire");
    }
    for (size_t w = 0; w < c.num_wires; w++) {
        std::string where = "inputs[" + std::to_string(w) + "]";
        const CMatrix &rho = c.inputs[w].matrix;
        check_local(rho, c.d, where);
        if (std::abs(trace(rho) - 1.0) > kTol) {
            throw ValidationError(where + ": state must have unit trace");
        }
        if (eig2(rho).first < -kTol) {
            throw ValidationError(where + ": state is not positive semidefinite");
        }
        where = "effects[" + std::to_string(w) + "]";
        const CMatrix &e = c.effects[w].matrix;
        check_local(e, c.d, where);
        auto [lo, hi] = eig2(e);
        if (lo < -kTol || hi > 1 + kTol) {
            throw ValidationError(where + ": effect must satisfy 0 <= E <= 1");
        }
    }
    for (size_t k = 0; k < c.gates.size(); k++) {
        const Gate &g = c.gates[k];
        std::string where = "gates[" + std::to_string(k) + "]";
        if (g.support.empty()) {
            throw ValidationError(where + ": empty wire list");
        }
        for (size_t a = 0; a < g.support.size(); a++) {
            if (g.support[a] >= c.num_wires) {
                throw ValidationError(where + ": wire " + std::to_string(g.support[a]) + " out of range");
            }
            for (size_t b = a + 1; b < g.support.size(); b++) {
                if (g.support[a] == g.support[b]) {
                    throw ValidationError(where + ": duplicate wire");
                }
            }
        }
        if (g.matrix.rows() != ipow(c.d, g.arity()) || !g.matrix.is_square()) {
            throw ValidationError(where + ": matrix size does not match wire count");
        }
        if (!is_unitary(g.matrix)) {
            throw ValidationError(where + ": gate is not unitary");
        }
    }
}

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("circuit JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("circuit JSON: top level must be an object");
    }
    auto require = [&](const char *key) -> const json & {
        if (!doc.contains(key)) {
            throw ValidationError(std::string("circuit JSON: missing field '") + key + "'");
        }
        return doc[key];
    };
    Circuit c;
    const json &d = require("d");
    const json &wires = require("wires");
    if (!d.is_number_integer() || !wires.is_number_integer() || wires.get<int64_t>() <= 0) {
        throw ValidationError("circuit JSON: 'd' and 'wires' must be positive integers");
    }
    c.d = d.get<size_t>();
    c.num_wires = wires.get<size_t>();
    if (c.d != 2) {
        throw ValidationError("circuit JSON: only d = 2 is supported");
    }
    const json &inputs = require("inputs");
    const json &effects = require("effects");
    const json &gates = require("gates");
    if (!inputs.is_array() || !effects.is_array() || !gates.is_array()) {
        throw ValidationError("circuit JSON: 'inputs', 'gates' and 'effects' must be arrays");
    }
    for (size_t k = 0; k < inputs.size(); k++) {
        c.inputs.push_back(local_from_json(inputs[k], false, "inputs[" + std::to_string(k) + "]"));
    }
    for (size_t k = 0; k < effects.size(); k++) {
        c.effects.push_back(local_from_json(effects[k], true, "effects[" + std::to_string(k) + "]"));
    }
    for (size_t k = 0; k < gates.size(); k++) {
        std::string where = "gates[" + std::to_string(k) + "]";
        const json &g = gates[k];
        if (!g.is_object() || !g.contains("wires") || !g["wires"].is_array()) {
            throw ValidationError(where + ": gate needs a 'wires' array");
        }
        WireSupport ws;
        for (const auto &w : g["wires"]) {
            if (!w.is_number_integer() || w.get<int64_t>() < 0) {
                throw ValidationError(where + ": wires must be non-negative integers");
            }
            ws.push_back(w.get<uint32_t>());
        }
        std::string name = g.contains("name") ? g["name"].get<std::string>() : "";
        try {
            if (g.contains("matrix")) {
                std::string label = g.contains("label") ? g["label"].get<std::string>() : "MATRIX";
                c.gates.push_back(matrix_gate(matrix_from_json(g["matrix"], where + ".matrix"), ws, label));
            } else if (name.empty()) {
                throw ValidationError("gate needs either 'name' or 'matrix'");
            } else if (canonical_name(name) == "MATRIX") {
                throw ValidationError("MATRIX gate needs a 'matrix' field");
            } else {
                double phase = 0.0;
                if (g.contains("phase")) {
                    if (!g["phase"].is_number()) {
                        throw ValidationError("'phase' must be a number");
                    }
                    phase = g["phase"].get<double>();
                }
                c.gates.push_back(library_gate(name, ws, phase));
            }
        } catch (const ValidationError &e) {
            std::string msg = e.what();
            if (msg.rfind(where, 0) == 0) {
                throw;
            }
            throw ValidationError(where + ": " + msg);
        }
    }
    validate_circuit(c);
    return c;
}

std::string serialize_circuit(const Circuit &c) {
    json doc;
    doc["d"] = c.d;
    doc["wires"] = c.num_wires;
    doc["inputs"] = json::array();
    doc["effects"] = json::array();
    doc["gates"] = json::array();
    for (const auto &op : c.inputs) {
        doc["inputs"].push_back(local_to_json(op));
    }
    for (const auto &op : c.effects) {
        doc["effects"].push_back(local_to_json(op));
    }
    for (const auto &g : c.gates) {
        json jg;
        jg["wires"] = g.support;
        if (!g.name.empty()) {
            jg["name"] = g.name;
            if (g.name == "PHASE") {
                jg["phase"] = g.phase;
            }
        } else {
            jg["matrix"] = matrix_to_json(g.matrix);
            jg["label"] = g.label;
        }
        doc["gates"].push_back(std::move(jg));
    }
    return doc.dump(2) + "\n";
}

Circuit blank_circuit(size_t num_wires) {
    Circuit c;
    c.num_wires = num_wires;
    for (size_t w = 0; w < num_wires; w++) {
        c.inputs.push_back(named_state("zero"));
        c.effects.push_back(named_effect("proj0"));
    }
    return c;
}

Circuit gen_clifford_t(size_t num_wires, size_t num_cliffords, size_t num_t, std::mt19937_64 &rng) {
    if (num_wires < 2) {
        throw ValidationError("gen_clifford_t needs at least two wires");
    }
    Circuit c = blank_circuit(num_wires);
    std::uniform_int_distribution<uint32_t> wire(0, static_cast<uint32_t>(num_wires - 1));
    std::uniform_int_distribution<int> kind(0, 3);
    auto distinct_pair = [&]() {
        uint32_t a = wire(rng);
        uint32_t b = wire(rng);
        while (b == a) {
            b = wire(rng);
        }
        return WireSupport{a, b};
    };
    for (size_t k = 0; k < num_cliffords; k++) {
        switch (kind(rng)) {
            case 0:
                c.gates.push_back(library_gate("H", {wire(rng)}));
                break;
            case 1:
                c.gates.push_back(library_gate("S", {wire(rng)}));
                break;
            case 2:
                c.gates.push_back(library_gate("CX", distinct_pair()));
                break;
            default:
                c.gates.push_back(library_gate("CZ", distinct_pair()));
                break;
        }
    }
    for (size_t k = 0; k < num_t; k++) {
        c.gates.push_back(library_gate("T", {wire(rng)}));
    }
    std::shuffle(c.gates.begin(), c.gates.end(), rng);
    return c;
}

Circuit gen_haar_circuit(size_t num_wires, size_t num_gates, std::mt19937_64 &rng) {
    if (num_wires < 2) {
        throw ValidationError("gen_haar_circuit needs at least two wires");
    }
    Circuit c = blank_circuit(num_wires);
    std::uniform_int_distribution<uint32_t> wire(0, static_cast<uint32_t>(num_wires - 1));
    for (size_t k = 0; k < num_gates; k++) {
        uint32_t a = wire(rng);
        uint32_t b = wire(rng);
        while (b == a) {
            b = wire(rng);
        }
        c.gates.push_back(matrix_gate(haar_unitary(4, rng), {a, b}, "HAAR"));
    }
    return c;
}

CMatrix circuit_unitary(const Circuit &c) {
    if (c.num_wires > 10) {
        throw ValidationError("circuit_unitary: refusing to build a unitary on more than 10 wires");
    }
    CMatrix u = CMatrix::identity(ipow(c.d, c.num_wires));
    for (const auto &g : c.gates) {
        u = embed_gate(g.matrix, g.support, c.num_wires, c.d) * u;
    }
    return u;
}

}  // namespace qpsim
