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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qpsim/numerics.hpp"

namespace qpsim {

/// Phase-space points of one qubit are indexed 2p + q, i.e. (0,0), (0,1), (1,0), (1,1).
inline constexpr size_t kPointsPerQubit = 4;

/// Bounds on the Wigner parametrisation function g.
inline constexpr double kWignerGMin = 1e-3;
inline constexpr double kWignerGMax = 1e3;

enum class FrameKind { wigner, rotated_pauli };

std::string_view frame_kind_name(FrameKind kind);
FrameKind parse_frame_kind(std::string_view name);

/// A single-qubit frame {F(λ)} together with its dual {G(λ)}.
///
/// Besides the raw operators the pair caches real expansion tables in the Pauli basis
/// (I, X, Y, Z), which the transition-tensor kernels consume:
///   f_coef[λ * 4 + a] = Tr[P_a F(λ)]
///   g_coef[b * 4 + λ] = Tr[P_b G(λ)] / 2
struct FramePair {
    FrameKind kind = FrameKind::rotated_pauli;
    std::vector<double> params;
    std::vector<CMatrix> f_ops;
    std::vector<CMatrix> g_ops;
    std::array<double, 16> f_coef{};
    std::array<double, 16> g_coef{};

    /// Assembles a pair from raw operators without validating duality. Fails if any operator
    /// has a non-real Pauli expansion.
    static FramePair from_operators(
        FrameKind kind, std::vector<double> params, std::vector<CMatrix> f_ops, std::vector<CMatrix> g_ops);

    bool operator==(const FramePair &other) const {
        return kind == other.kind && params == other.params;
    }
};

/// Discrete displacement operator D(p, q) = i^{pq} Z^p X^q. Only d = 2 is supported.
CMatrix displacement(int p, int q, int d = 2);

/// Pauli basis element a in {0: I, 1: X, 2: Y, 3: Z}.
const CMatrix &pauli(size_t a);

/// Parametrised Wigner frame from g over the four phase points, with g(0,0) = 1 and every entry
/// in [kWignerGMin, kWignerGMax]. The dual pair is verified before returning.
FramePair make_wigner_frame(const std::vector<double> &g);

/// Rotated Pauli frame for angles (θ_X, θ_Y, θ_Z). D(0,1) and D(1,0) are the rotated X and Z;
/// D(1,1) = i D(1,0) D(0,1) keeps the three non-identity elements anticommuting and
/// trace-orthogonal for every θ. The dual pair is verified before returning.
FramePair make_pauli_frame(const std::array<double, 3> &theta);

/// Reference frame of a family: g ≡ 1, or θ = 0.
FramePair reference_frame(FrameKind kind);

/// Frame from file-style parameters (4 g-values, or 3 angles).
FramePair frame_from_params(FrameKind kind, const std::vector<double> &params);

/// Max over the displacement basis B of ‖Σ_λ Tr[F(λ)B] G(λ) − B‖_max.
double check_duality(const FramePair &fp);

/// Number of free real parameters the optimiser tunes for a frame of this kind.
inline constexpr size_t kFreeParams = 3;

/// Maps a frame to optimiser coordinates: angles as-is, Wigner as u = ln g over the three
/// non-origin points.
std::array<double, kFreeParams> to_free_params(const FramePair &fp);

/// Inverse of to_free_params. Wigner coordinates are clamped into the allowed box.
FramePair from_free_params(FrameKind kind, const std::array<double, kFreeParams> &u);

}  // namespace qpsim
