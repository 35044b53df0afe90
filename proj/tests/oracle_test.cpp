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

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace qpsim;
using namespace qpsim_test;

TEST(oracle, examples) {
    Circuit c = blank_circuit(1);
    ASSERT_NEAR(exact_probability(c), 1.0, 1e-15);
    c.gates.push_back(library_gate("H", {0}));
    ASSERT_NEAR(exact_probability(c), 0.5, 1e-15);

    Circuit tof = blank_circuit(3);
    tof.inputs[0] = named_state("one");
    tof.inputs[1] = named_state("one");
    tof.effects[0] = named_effect("identity");
    tof.effects[1] = named_effect("identity");
    tof.effects[2] = named_effect("proj1");
    tof.gates.push_back(library_gate("CCX", {0, 1, 2}));
    ASSERT_NEAR(exact_probability(tof), 1.0, 1e-15);
}

TEST(oracle, apply_gate_inplace_matches_embedding) {
    std::mt19937_64 rng(1);
    size_t n = 5;
    std::vector<cplx> amps(size_t{1} << n);
    std::normal_distribution<double> normal;
    for (auto &a : amps) {
        a = cplx(normal(rng), normal(rng));
    }
    for (const WireSupport &s : std::vector<WireSupport>{{3}, {4, 1}, {0, 2, 4}}) {
        CMatrix g = haar_unitary(size_t{1} << s.size(), rng);
        CMatrix full = embed_by_basis(g, s, n);
        std::vector<cplx> expected(amps.size());
        for (size_t r = 0; r < amps.size(); r++) {
            for (size_t c = 0; c < amps.size(); c++) {
                expected[r] += full(r, c) * amps[c];
            }
        }
        apply_gate_inplace(amps, n, g, s);
        for (size_t i = 0; i < amps.size(); i++) {
            ASSERT_LT(std::abs(amps[i] - expected[i]), 1e-12);
        }
    }
}

TEST(oracle, paths_agree_on_pure_inputs) {
    std::mt19937_64 rng(2);
    for (size_t trial = 0; trial < 10; trial++) {
        Circuit c = gen_haar_circuit(4, 6, rng);
        c.inputs[1] = named_state("plus");
        c.inputs[3] = named_state("magic_T");
        c.effects[0] = {random_effect(rng), ""};
        double sv = exact_probability_statevector(c);
        double dm = exact_probability_density(c);
        ASSERT_NEAR(sv, dm, 1e-10);
        ASSERT_NEAR(sv, dense_probability(c), 1e-10);
        ASSERT_GE(sv, 0.0);
        ASSERT_LE(sv, 1.0 + 1e-9);
    }
}

TEST(oracle, mixed_inputs_use_density_path) {
    std::mt19937_64 rng(3);
    for (size_t trial = 0; trial < 10; trial++) {
        Circuit c = random_small_circuit(3, 4, rng);
        double p = exact_probability(c);
        ASSERT_NEAR(p, dense_probability(c), 1e-10);
        ASSERT_GE(p, 0.0);
        ASSERT_LE(p, 1.0 + 1e-9);
    }
    ASSERT_THROW(exact_probability_statevector(random_small_circuit(2, 1, rng)), ValidationError);
}

TEST(oracle, size_guards) {
    ASSERT_THROW(exact_probability_statevector(blank_circuit(13)), ValidationError);
    ASSERT_THROW(exact_probability_density(blank_circuit(7)), ValidationError);
    std::mt19937_64 rng(4);
    Circuit wide = gen_haar_circuit(12, 10, rng);
    double p = exact_probability(wide);
    ASSERT_GE(p, 0.0);
    ASSERT_LE(p, 1.0);
}
