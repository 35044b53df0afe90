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

// Independent reference computations used as oracles by the test suites. Nothing here calls into
// the library's embedding, oracle or tensor code; everything is spelled out with basis-state
// loops on small dense matrices.

#include <cmath>
#include <random>
#include <vector>

#include "qpsim/circuit.hpp"
#include "qpsim/frames.hpp"
#include "qpsim/numerics.hpp"
#include "qpsim/quasiprob.hpp"

namespace qpsim_test {

using qpsim::CMatrix;
using qpsim::cplx;

inline CMatrix matmul(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < b.cols(); j++) {
            cplx acc{};
            for (size_t k = 0; k < a.cols(); k++) {
                acc += a(i, k) * b(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

inline CMatrix dagger(const CMatrix &a) {
    CMatrix out(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline cplx trace_of(const CMatrix &a) {
    cplx t{};
    for (size_t i = 0; i < a.rows(); i++) {
        t += a(i, i);
    }
    return t;
}

inline CMatrix tensor(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Full-space operator of a qubit gate, built column by column from its action on basis states.
/// Wire 0 is the most significant bit.
inline CMatrix embed_by_basis(const CMatrix &g, const qpsim::WireSupport &support, size_t n) {
    size_t dim = size_t{1} << n;
    size_t k = support.size();
    CMatrix out(dim, dim);
    auto bit = [&](size_t idx, size_t wire) { return (idx >> (n - 1 - wire)) & 1; };
    for (size_t col = 0; col < dim; col++) {
        size_t sub_in = 0;
        for (size_t j = 0; j < k; j++) {
            sub_in = sub_in * 2 + bit(col, support[j]);
        }
        for (size_t sub_out = 0; sub_out < (size_t{1} << k); sub_out++) {
            size_t row = col;
            for (size_t j = 0; j < k; j++) {
                size_t b = (sub_out >> (k - 1 - j)) & 1;
                size_t mask = size_t{1} << (n - 1 - support[j]);
                row = b ? (row | mask) : (row & ~mask);
            }
            out(row, col) += g(sub_out, sub_in);
        }
    }
    return out;
}

/// Tr[U ρ U† E] on the full space with dense matrices.
inline double dense_probability(const qpsim::Circuit &c) {
    size_t n = c.num_wires;
    CMatrix rho = c.inputs[0].matrix;
    CMatrix e = c.effects[0].matrix;
    for (size_t w = 1; w < n; w++) {
        rho = tensor(rho, c.inputs[w].matrix);
        e = tensor(e, c.effects[w].matrix);
    }
    CMatrix u = CMatrix::identity(size_t{1} << n);
    for (const auto &g : c.gates) {
        u = matmul(embed_by_basis(g.matrix, g.support, n), u);
    }
    return trace_of(matmul(matmul(matmul(u, rho), dagger(u)), e)).real();
}

inline std::vector<CMatrix> pauli_basis() {
    return {
        CMatrix{{1, 0}, {0, 1}},
        CMatrix{{0, 1}, {1, 0}},
        CMatrix{{0, cplx(0, -1)}, {cplx(0, 1), 0}},
        CMatrix{{1, 0}, {0, -1}},
    };
}

/// Random single-qubit density matrix (mixed, full rank with probability one).
inline CMatrix random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    double x = normal(rng), y = normal(rng), z = normal(rng);
    double r = std::sqrt(x * x + y * y + z * z);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double len = unit(rng) / r;
    auto p = pauli_basis();
    CMatrix out = p[0] * 0.5;
    out += p[1] * (0.5 * x * len);
    out += p[2] * (0.5 * y * len);
    out += p[3] * (0.5 * z * len);
    return out;
}

/// Random effect 0 <= E <= 1.
inline CMatrix random_effect(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    CMatrix v = qpsim::haar_unitary(2, rng);
    CMatrix d{{unit(rng), 0}, {0, unit(rng)}};
    return matmul(matmul(v, d), dagger(v));
}

inline qpsim::FramePair random_frame(qpsim::FrameKind kind, std::mt19937_64 &rng) {
    if (kind == qpsim::FrameKind::wigner) {
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        return qpsim::make_wigner_frame({1.0, std::exp(u(rng)), std::exp(u(rng)), std::exp(u(rng))});
    }
    std::uniform_real_distribution<double> a(-M_PI, M_PI);
    return qpsim::make_pauli_frame({a(rng), a(rng), a(rng)});
}

inline qpsim::FrameAssignment random_assignment(
    const qpsim::Topology &topo, std::mt19937_64 &rng, bool mixed_kinds = true,
    qpsim::FrameKind kind = qpsim::FrameKind::wigner) {
    qpsim::FrameAssignment fa;
    std::bernoulli_distribution coin(0.5);
    for (size_t s = 0; s < topo.num_segments; s++) {
        qpsim::FrameKind k = mixed_kinds ? (coin(rng) ? qpsim::FrameKind::wigner : qpsim::FrameKind::rotated_pauli) : kind;
        fa.segments.push_back(random_frame(k, rng));
    }
    return fa;
}

/// Random circuit on `wires` qubits with `gates` Haar gates of arity 1 or 2, random mixed inputs
/// and random effects.
inline qpsim::Circuit random_small_circuit(size_t wires, size_t gates, std::mt19937_64 &rng) {
    qpsim::Circuit c;
    c.num_wires = wires;
    for (size_t w = 0; w < wires; w++) {
        c.inputs.push_back({random_state(rng), ""});
        c.effects.push_back({random_effect(rng), ""});
    }
    std::uniform_int_distribution<uint32_t> wire(0, static_cast<uint32_t>(wires - 1));
    for (size_t l = 0; l < gates; l++) {
        bool two = wires > 1 && std::bernoulli_distribution(0.6)(rng);
        qpsim::WireSupport s{wire(rng)};
        if (two) {
            uint32_t b;
            do {
                b = wire(rng);
            } while (b == s[0]);
            s.push_back(b);
        }
        c.gates.push_back(qpsim::matrix_gate(qpsim::haar_unitary(size_t{1} << s.size(), rng), s, "U"));
    }
    return c;
}

}  // namespace qpsim_test
