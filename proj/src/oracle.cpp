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

#include "qpsim/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qpsim {

namespace {

double clamp_probability(double p) {
    if (p < 0 && p > -kTol) {
        return 0.0;
    }
    return p;
}

bool is_pure(const CMatrix &rho) {
    return std::abs(trace_inner(rho, rho) - 1.0) < kTol;
}

std::vector<cplx> pure_vector(const CMatrix &rho) {
    size_t col = std::abs(rho(0, 0)) >= std::abs(rho(1, 1)) ? 0 : 1;
    double norm = std::sqrt(rho(col, col).real());
    return {rho(0, col) / norm, rho(1, col) / norm};
}

CMatrix transpose(const CMatrix &m) {
    CMatrix t(m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            t(c, r) = m(r, c);
        }
    }
    return t;
}

CMatrix conjugate(const CMatrix &m) {
    CMatrix out = m;
    for (auto &v : out.data()) {
        v = std::conj(v);
    }
    return out;
}

}  // namespace

void apply_gate_inplace(std::span<cplx> amps, size_t num_qubits, const CMatrix &gate, const WireSupport &targets) {
    size_t k = targets.size();
    size_t gdim = size_t{1} << k;
    if (gate.rows() != gdim || gate.cols() != gdim) {
        throw ValidationError("apply_gate_inplace: gate size does not match target count");
    }
    std::vector<size_t> offsets(gdim, 0);
    size_t mask = 0;
    for (size_t j = 0; j < k; j++) {
        if (targets[j] >= num_qubits) {
            throw ValidationError("apply_gate_inplace: target out of range");
        }
        size_t bit = size_t{1} << (num_qubits - 1 - targets[j]);
        mask |= bit;
        for (size_t s = 0; s < gdim; s++) {
            if (s & (size_t{1} << (k - 1 - j))) {
                offsets[s] |= bit;
            }
        }
    }
    std::vector<cplx> in(gdim);
    size_t total = size_t{1} << num_qubits;
    for (size_t base = 0; base < total; base++) {
        if (base & mask) {
            continue;
        }
        for (size_t s = 0; s < gdim; s++) {
            in[s] = amps[base | offsets[s]];
        }
        for (size_t r = 0; r < gdim; r++) {
            cplx acc{};
            for (size_t s = 0; s < gdim; s++) {
                acc += gate(r, s) * in[s];
            }
            amps[base | offsets[r]] = acc;
        }
    }
}

double exact_probability_statevector(const Circuit &c) {
    validate_circuit(c);
    if (c.num_wires > 12) {
        throw ValidationError("exact_probability: state-vector path is limited to 12 wires");
    }
    std::vector<cplx> psi{1.0};
    for (const auto &in : c.inputs) {
        if (!is_pure(in.matrix)) {
            throw ValidationError("exact_probability: state-vector path needs pure inputs");
        }
        auto v = pure_vector(in.matrix);
        std::vector<cplx> next(psi.size() * 2);
        for (size_t i = 0; i < psi.size(); i++) {
            next[2 * i] = psi[i] * v[0];
            next[2 * i + 1] = psi[i] * v[1];
        }
        psi = std::move(next);
    }
    for (const auto &g : c.gates) {
        apply_gate_inplace(psi, c.num_wires, g.matrix, g.support);
    }
    std::vector<cplx> e_psi = psi;
    for (uint32_t w = 0; w < c.num_wires; w++) {
        apply_gate_inplace(e_psi, c.num_wires, c.effects[w].matrix, {w});
    }
    cplx p{};
    for (size_t i = 0; i < psi.size(); i++) {
        p += std::conj(psi[i]) * e_psi[i];
    }
    return clamp_probability(p.real());
}

double exact_probability_density(const Circuit &c) {
    validate_circuit(c);
    size_t n = c.num_wires;
    if (n > 6) {
        throw ValidationError("exact_probability: density-matrix path is limited to 6 wires");
    }
    // Vectorised ρ: row wires are qubits 0..n-1, column wires are qubits n..2n-1.
    std::vector<cplx> rho{1.0};
    CMatrix joint = CMatrix::identity(1);
    for (const auto &in : c.inputs) {
        joint = kron(joint, in.matrix);
    }
    rho.assign(joint.data().begin(), joint.data().end());
    for (const auto &g : c.gates) {
        WireSupport cols;
        for (uint32_t w : g.support) {
            cols.push_back(static_cast<uint32_t>(w + n));
        }
        apply_gate_inplace(rho, 2 * n, g.matrix, g.support);
        apply_gate_inplace(rho, 2 * n, conjugate(g.matrix), cols);
    }
    for (uint32_t w = 0; w < n; w++) {
        apply_gate_inplace(rho, 2 * n, transpose(c.effects[w].matrix), {static_cast<uint32_t>(w + n)});
    }
    size_t dim = size_t{1} << n;
    cplx p{};
    for (size_t r = 0; r < dim; r++) {
        p += rho[r * dim + r];
    }
    return clamp_probability(p.real());
}

double exact_probability(const Circuit &c) {
    bool pure = std::all_of(c.inputs.begin(), c.inputs.end(), [](const LocalOperator &op) {
        return op.matrix.rows() == 2 && is_pure(op.matrix);
    });
    return pure ? exact_probability_statevector(c) : exact_probability_density(c);
}

}  // namespace qpsim
