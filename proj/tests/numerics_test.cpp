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

#include "qpsim/numerics.hpp"

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace qpsim;
using namespace qpsim_test;

namespace {

CMatrix random_matrix(size_t r, size_t c, std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    CMatrix m(r, c);
    for (auto &x : m.data()) {
        x = cplx(n(rng), n(rng));
    }
    return m;
}

}  // namespace

TEST(numerics, kron_index_formula) {
    std::mt19937_64 rng(1);
    CMatrix a = random_matrix(2, 3, rng);
    CMatrix b = random_matrix(3, 2, rng);
    CMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (size_t i = 0; i < 2; i++) {
        for (size_t j = 0; j < 3; j++) {
            for (size_t p = 0; p < 3; p++) {
                for (size_t q = 0; q < 2; q++) {
                    ASSERT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
                }
            }
        }
    }
}

TEST(numerics, kron_pauli) {
    CMatrix x{{0, 1}, {1, 0}};
    CMatrix z{{1, 0}, {0, -1}};
    CMatrix xz = kron(x, z);
    CMatrix expected{{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    ASSERT_EQ(xz, expected);
}

TEST(numerics, product_and_adjoint) {
    std::mt19937_64 rng(2);
    CMatrix a = random_matrix(3, 4, rng);
    CMatrix b = random_matrix(4, 2, rng);
    ASSERT_LT(max_abs_diff(a * b, matmul(a, b)), 1e-12);
    ASSERT_LT(max_abs_diff(a.adjoint(), dagger(a)), 1e-15);
    ASSERT_THROW(a * a, ValidationError);
    ASSERT_THROW(a + b, ValidationError);
}

TEST(numerics, trace_inner_matches_product) {
    std::mt19937_64 rng(3);
    for (size_t dim : {1, 2, 4, 8}) {
        CMatrix a = random_matrix(dim, dim, rng);
        CMatrix b = random_matrix(dim, dim, rng);
        cplx expected = trace_of(matmul(a, b));
        ASSERT_LT(std::abs(trace_inner(a, b) - expected), 1e-10);
        ASSERT_LT(std::abs(trace(a) - trace_of(a)), 1e-12);
    }
    ASSERT_THROW(trace_inner(CMatrix(2, 2), CMatrix(4, 4)), ValidationError);
}

TEST(numerics, unitary_and_hermitian_checks) {
    CMatrix h{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
    ASSERT_TRUE(is_unitary(h));
    ASSERT_TRUE(is_hermitian(h));
    CMatrix s{{1, 0}, {0, cplx(0, 1)}};
    ASSERT_TRUE(is_unitary(s));
    ASSERT_FALSE(is_hermitian(s));
    ASSERT_FALSE(is_unitary(CMatrix{{1, 1}, {0, 1}}));
    ASSERT_TRUE(equal_up_to_phase(s * std::polar(1.0, 0.7), s, 1e-12));
    ASSERT_FALSE(equal_up_to_phase(s, h, 1e-6));
}

TEST(numerics, embed_gate_matches_basis_construction) {
    std::mt19937_64 rng(4);
    std::vector<WireSupport> supports{{0}, {2}, {0, 1}, {1, 0}, {3, 1}, {2, 0, 3}, {1, 3, 0}};
    for (const auto &s : supports) {
        CMatrix g = haar_unitary(size_t{1} << s.size(), rng);
        CMatrix e = embed_gate(g, s, 4);
        ASSERT_LT(max_abs_diff(e, embed_by_basis(g, s, 4)), 1e-14) << "support size " << s.size();
    }
}

TEST(numerics, embed_gate_rejects_bad_support) {
    CMatrix g = CMatrix::identity(4);
    ASSERT_THROW(embed_gate(g, {0}, 3), ValidationError);
    ASSERT_THROW(embed_gate(g, {0, 0}, 3), ValidationError);
    ASSERT_THROW(embed_gate(g, {0, 3}, 3), ValidationError);
}

TEST(numerics, embed_cx_reversed_wires) {
    CMatrix cx{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    // Control on wire 1, target on wire 0.
    CMatrix e = embed_gate(cx, {1, 0}, 2);
    CMatrix expected{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
    ASSERT_EQ(e, expected);
}

TEST(numerics, haar_unitary_is_unitary) {
    std::mt19937_64 rng(5);
    for (size_t dim : {1, 2, 4, 8, 32}) {
        ASSERT_TRUE(is_unitary(haar_unitary(dim, rng), 1e-10)) << dim;
    }
    ASSERT_THROW(haar_unitary(0, rng), ValidationError);
}

TEST(numerics, haar_unitary_moments) {
    // For Haar U in U(4): E|U00|^2 = 1/4, E|U00|^4 = 2/(d(d+1)) = 1/10.
    std::mt19937_64 rng(6);
    double m2 = 0, m4 = 0;
    size_t trials = 20000;
    for (size_t t = 0; t < trials; t++) {
        double p = std::norm(haar_unitary(4, rng)(0, 0));
        m2 += p / trials;
        m4 += p * p / trials;
    }
    ASSERT_NEAR(m2, 0.25, 0.01);
    ASSERT_NEAR(m4, 0.1, 0.01);
}

TEST(numerics, haar_phase_is_uniform) {
    // Mean of U00 itself vanishes for Haar measure; a fixed-phase construction would not.
    std::mt19937_64 rng(7);
    cplx mean{};
    size_t trials = 20000;
    for (size_t t = 0; t < trials; t++) {
        mean += haar_unitary(2, rng)(0, 0) / static_cast<double>(trials);
    }
    ASSERT_LT(std::abs(mean), 0.02);
}

TEST(numerics, make_rng_streams) {
    auto a = make_rng(42, 0);
    auto b = make_rng(42, 0);
    auto c = make_rng(42, 1);
    auto d = make_rng(43, 0);
    uint64_t va = a(), vb = b(), vc = c(), vd = d();
    ASSERT_EQ(va, vb);
    ASSERT_NE(va, vc);
    ASSERT_NE(va, vd);
}

TEST(numerics, ipow) {
    ASSERT_EQ(ipow(2, 0), 1u);
    ASSERT_EQ(ipow(2, 10), 1024u);
    ASSERT_EQ(ipow(4, 3), 64u);
}
