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

#include <filesystem>
#include <string>
#include <vector>

#include "qpsim/circuit.hpp"
#include "qpsim/frame_opt.hpp"
#include "qpsim/merging.hpp"
#include "qpsim/quasiprob.hpp"
#include "qpsim/sampler.hpp"

namespace qpsim {

/// Per-T-gate reference exponents of the robustness-of-magic and dyadic-frame scalings.
inline constexpr double kRobustnessExponent = 0.272;
inline constexpr double kDyadicExponent = 0.228;

std::string tool_version();

// ---------------------------------------------------------------------------------------------
// Merged Clifford+T block negativity.

struct CliffordTBlockParams {
    size_t ensemble = 100;
    size_t wires = 5;
    size_t cliffords = 100;
    size_t t = 15;
    size_t n = 5;
    uint64_t seed = 0;
};

struct CliffordTBlockRow {
    size_t index = 0;
    size_t gates_after = 0;
    double log2_negativity = 0;
    /// log4(N) / t
    double log4_per_t = 0;
    /// log2(N) / t, i.e. the per-T exponent of the sample cost N^2 in base 4.
    double log2_per_t = 0;
};

struct CliffordTBlockSummary {
    std::vector<CliffordTBlockRow> rows;
    double mean_log4_per_t = 0;
    double std_log4_per_t = 0;
    double frac_log4_below = 0;
    double frac_log4_above = 0;
    double mean_log2_per_t = 0;
    double frac_log2_below = 0;
    double frac_log2_above = 0;
};

/// Random Clifford+T circuits merged with spatial parameter n, negativity in the θ = 0 Pauli frame.
CliffordTBlockSummary run_clifford_t_blocks(const CliffordTBlockParams &p);

// ---------------------------------------------------------------------------------------------
// Frame-optimisation traces on a Haar circuit.

struct ReductionParams {
    size_t wires = 6;
    size_t gates = 15;
    std::vector<size_t> ns{2, 3, 4};
    std::vector<size_t> ells{1, 2, 5};
    std::vector<FrameKind> families{FrameKind::wigner, FrameKind::rotated_pauli};
    size_t hops = 10;
    size_t local_iters = 200;
    uint64_t seed = 0;
};

struct ReductionTrace {
    size_t n = 0;
    size_t ell = 0;
    FrameKind family = FrameKind::wigner;
    /// Reference-frame log2 negativity of the unmerged circuit.
    double unmerged_log2 = 0;
    /// trace[0] is the merged circuit before optimisation.
    std::vector<double> trace;
};

std::vector<ReductionTrace> run_reduction(const ReductionParams &p);

// ---------------------------------------------------------------------------------------------
// Estimation error for unmerged / merged / merged+optimised Haar circuits.

struct ErrorHistParams {
    size_t circuits = 30;
    size_t wires = 3;
    size_t gates = 8;
    size_t n = 3;
    size_t ell = 1;
    uint64_t samples = 1000000;
    FrameKind family = FrameKind::wigner;
    size_t hops = 10;
    size_t local_iters = 200;
    size_t workers = 1;
    uint64_t seed = 0;
};

struct ErrorHistRow {
    size_t index = 0;
    double p_exact = 0;
    double err_unmerged = 0;
    double err_merged = 0;
    double err_optimised = 0;
    double log2_unmerged = 0;
    double log2_merged = 0;
    double log2_optimised = 0;
};

std::vector<ErrorHistRow> run_error_hist(const ErrorHistParams &p);

/// Fraction of `repetitions` estimates at M = required_samples(ε, δ, N_C) whose error exceeds ε.
double hoeffding_violation_rate(
    const Circuit &c, const FrameAssignment &fa, double epsilon, double delta, size_t repetitions, uint64_t seed);

// ---------------------------------------------------------------------------------------------

struct ToffoliAnchor {
    double toffoli = 0;
    double t_fourth_power = 0;
};

/// Pauli-frame (θ = 0) negativities of the Toffoli gate and of four T gates.
ToffoliAnchor toffoli_anchor();

struct PipelineParams {
    size_t n = 3;
    size_t ell = 2;
    double epsilon = 0.05;
    double delta = 0.05;
    uint64_t seed = 0;
    FrameKind family = FrameKind::rotated_pauli;
    size_t hops = 10;
    size_t local_iters = 200;
    size_t workers = 1;
    /// Refuse to run if the Hoeffding sample count exceeds this.
    uint64_t max_samples = 1000000000;
};

struct PipelineResult {
    double log2_initial = 0;
    Circuit merged;
    OptResult optimised;
    EstimateReport report;
};

/// Merge, optimise frames, compile, and estimate with the Hoeffding sample count.
PipelineResult run_pipeline(const Circuit &c, const PipelineParams &p);

/// Runs an experiment document {"name": .., "parameters": {..}} and writes its artifacts into
/// `out_dir`. Returns the paths written. Timing goes to a sidecar `run.log` only.
std::vector<std::filesystem::path> run_experiment(const std::string &spec_text, const std::filesystem::path &out_dir);

}  // namespace qpsim
