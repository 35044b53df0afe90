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

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qpsim/circuit.hpp"
#include "qpsim/quasiprob.hpp"

namespace qpsim {

enum class TargetSelection { sequential, random };

struct OptConfig {
    /// Temporal parameter: frames optimised jointly per cycle.
    size_t ell = 2;
    /// Number of cycles; defaults to ceil(#segments / ell).
    std::optional<size_t> cycles;
    size_t hops = 10;
    size_t local_iters = 200;
    double step_scale = 0.5;
    uint64_t seed = 0;
    TargetSelection selection = TargetSelection::sequential;
};

/// Circuit components attached to a set of target segments.
struct Block {
    std::vector<size_t> targets;
    std::vector<uint32_t> states;
    std::vector<size_t> gates;
    std::vector<uint32_t> effects;
};

Block block_for_targets(const Circuit &c, const Topology &topo, std::span<const size_t> targets);

/// Sum of log2 negativities of a block's components as a function of the free parameters of its
/// target frames (3 per target, see to_free_params). Non-target frames are read from the
/// assignment given at construction. Gate transfer matrices are partially contracted with the
/// fixed frames up front, so each evaluation only applies the target modes.
class BlockObjective {
   public:
    BlockObjective(
        const Circuit &c, const Topology &topo, const FrameAssignment &fa, Block block,
        const std::vector<std::vector<double>> *ptm_cache = nullptr);

    size_t num_params() const {
        return kinds_.size() * kFreeParams;
    }

    /// Current free parameters of the targets.
    std::vector<double> initial_params() const;

    /// Per-coordinate box [lo, hi]; infinite for rotation angles.
    std::vector<std::pair<double, double>> bounds() const;

    /// Throws ValidationError if a Wigner coordinate leaves its box.
    double operator()(std::span<const double> params) const;

    /// Frames for the targets at the given parameters.
    std::vector<FramePair> frames_at(std::span<const double> params) const;

    /// Component log2 negativities at the given parameters, in block order
    /// (states, gates, effects).
    std::vector<double> component_values(std::span<const double> params) const;

    const Block &block() const {
        return block_;
    }

   private:
    struct GateTerm {
        size_t k = 0;
        std::vector<double> partial;
        // (support position, target index) for varying output / input modes.
        std::vector<std::pair<size_t, size_t>> out_modes;
        std::vector<std::pair<size_t, size_t>> in_modes;
    };

    const Circuit &circuit_;
    Block block_;
    std::vector<FrameKind> kinds_;
    std::vector<FramePair> start_frames_;
    std::vector<size_t> state_target_;
    std::vector<size_t> effect_target_;
    std::vector<GateTerm> gate_terms_;
};

/// log2 block negativity with the block's targets set from `params`.
double block_negativity(
    const Circuit &c, const FrameAssignment &fa, const Block &block, std::span<const double> params);

struct BasinHopResult {
    std::vector<double> params;
    double value = 0;
    size_t evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

/// Monotone basin hopping: Gaussian kicks of the incumbent followed by coordinate-wise
/// golden-section descent; only strictly improving hops are accepted.
BasinHopResult basin_hop(
    const Objective &objective, std::vector<double> init, const OptConfig &cfg, std::mt19937_64 &rng,
    const std::vector<std::pair<double, double>> &bounds = {});

struct OptResult {
    FrameAssignment frames;
    /// Total circuit log2 negativity before the first cycle and after every cycle.
    std::vector<double> trace;
};

/// Dynamic, block-local frame optimisation starting from fa0.
OptResult optimise_frames(const Circuit &c, const FrameAssignment &fa0, const OptConfig &cfg);

}  // namespace qpsim
