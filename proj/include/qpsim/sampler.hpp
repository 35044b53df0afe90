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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qpsim/circuit.hpp"
#include "qpsim/quasiprob.hpp"

namespace qpsim {

/// Real-valued Hoeffding bound (2/ε²) N_C² ln(2/δ).
double sample_bound(double epsilon, double delta, double n_c);

/// Smallest integer sample count meeting the Hoeffding bound.
uint64_t required_samples(double epsilon, double delta, double n_c);

/// Signed discrete distribution with a cumulative table over |values|.
struct SignedTable {
    std::vector<double> values;
    std::vector<double> cumulative;
    double norm = 0;

    explicit SignedTable(std::vector<double> v = {});
    /// Index i with probability |values[i]| / norm, given u uniform in [0, 1).
    size_t draw(double u) const;
};

struct CompiledGate {
    WireSupport support;
    size_t k = 0;
    TransitionTensor tensor;
    /// One table per input point (tensor column).
    std::vector<SignedTable> columns;
};

/// Circuit plus frame assignment with every quasi-probability representation materialised.
struct CompiledCircuit {
    size_t num_wires = 0;
    std::vector<SignedTable> inputs;
    std::vector<CompiledGate> gates;
    std::vector<std::vector<double>> effects;
    double n_c_log2 = 0;
    /// Largest possible |contribution| of one trajectory.
    double max_contribution = 0;
};

CompiledCircuit compile(const Circuit &c, const FrameAssignment &fa);

/// One signed trajectory contribution: sign · N_ρ · Π N_U(λ_{l-1}) · Π W_E(λ_L).
double sample_trajectory(const CompiledCircuit &cc, std::mt19937_64 &rng);

/// Exact expectation of sample_trajectory, by enumerating every trajectory with its probability.
double exact_expectation(const CompiledCircuit &cc);

struct EstimateReport {
    double p_est = 0;
    uint64_t samples = 0;
    double n_c_log2 = 0;
    double std_error = 0;
    double elapsed_seconds = 0;
    uint64_t seed = 0;
};

/// Mean of m trajectory contributions. Work is cut into fixed chunks, each with its own substream
/// of `seed`, so the result does not depend on `workers`.
EstimateReport estimate(const CompiledCircuit &cc, uint64_t m, uint64_t seed, size_t workers = 1);

std::string estimate_report_json(const EstimateReport &r);

}  // namespace qpsim
