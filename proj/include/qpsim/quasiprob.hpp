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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpsim/circuit.hpp"
#include "qpsim/frames.hpp"

namespace qpsim {

/// Wire-segment bookkeeping for a circuit.
///
/// Segment ids: 0..N-1 are the input segments of wires 0..N-1; then every gate, in circuit order,
/// contributes one output segment per support wire (in support order). A wire's effect reads the
/// last segment on that wire.
struct Topology {
    size_t num_wires = 0;
    size_t num_segments = 0;
    std::vector<size_t> input_segment;
    std::vector<size_t> effect_segment;
    std::vector<std::vector<size_t>> gate_in;
    std::vector<std::vector<size_t>> gate_out;
    /// Wire that carries each segment.
    std::vector<uint32_t> segment_wire;

    explicit Topology(const Circuit &c);
};

/// One FramePair per wire segment, indexed by segment id.
struct FrameAssignment {
    std::vector<FramePair> segments;

    static FrameAssignment uniform(const Topology &topo, const FramePair &fp);
    static FrameAssignment reference(const Topology &topo, FrameKind kind);

    /// Frames for a gate's input/output wires, in support order.
    std::vector<const FramePair *> pick(std::span<const size_t> ids) const;

    bool operator==(const FrameAssignment &) const = default;
};

/// Parses `[{"segment_id": .., "kind": .., "params": [..]}, ..]`. Segments missing from the file
/// take the reference frame of `default_kind`.
FrameAssignment parse_frame_assignment(std::string_view text, const Topology &topo, FrameKind default_kind);
std::string serialize_frame_assignment(const FrameAssignment &fa);

enum class DistRole { state, effect };

/// Quasi-probability vector of a single-qubit state or effect over its four phase points.
struct QuasiDist {
    std::vector<double> values;
    DistRole role = DistRole::state;

    /// Σ|W| for states, max|W| for effects.
    double negativity() const;
};

/// Transition matrix of a k-qubit gate: rows are output points, columns input points
/// (4^k each, lexicographic over the support wires).
struct TransitionTensor {
    size_t dim = 0;
    std::vector<double> matrix;
    std::vector<double> col_norms;
    double negativity = 0;

    double operator()(size_t out, size_t in) const {
        return matrix[out * dim + in];
    }
};

/// W_ρ(λ) = Tr[F(λ) ρ].
QuasiDist state_dist(const CMatrix &rho, const FramePair &fp);

/// W_E(λ) = Tr[E G(λ)].
QuasiDist effect_dist(const CMatrix &effect, const FramePair &fp);

/// Real Pauli transfer matrix R(a, b) = Tr[P_a U P_b U†] / 2^k of a k-qubit unitary.
std::vector<double> pauli_transfer_matrix(const CMatrix &u);

/// W(λ'|λ) = Tr[F'(λ') U G(λ) U†] for product frames, evaluated by expanding both frames in the
/// Pauli basis around the gate's transfer matrix.
TransitionTensor gate_tensor(
    const Gate &g, std::span<const FramePair *const> in_frames, std::span<const FramePair *const> out_frames);

/// Same tensor from a precomputed transfer matrix of a `k`-qubit gate.
TransitionTensor gate_tensor_from_ptm(
    std::span<const double> ptm, size_t k, std::span<const FramePair *const> in_frames,
    std::span<const FramePair *const> out_frames);

/// Direct evaluation of every entry as a trace of explicit tensor-product operators. Slow; kept
/// as an independent cross-check of gate_tensor.
TransitionTensor gate_tensor_reference(
    const Gate &g, std::span<const FramePair *const> in_frames, std::span<const FramePair *const> out_frames);

/// Fills col_norms and negativity from the matrix.
void finalize_tensor(TransitionTensor &t);

/// Applies a 4x4 real matrix (row-major) to tensor mode `mode` of the row index (left side,
/// `m` acting as out = m * W) or of the column index (right side, out = W * m) of a
/// 4^k x 4^k row-major matrix.
void apply_row_mode(std::span<double> w, size_t k, size_t mode, const std::array<double, 16> &m);
void apply_col_mode(std::span<double> w, size_t k, size_t mode, const std::array<double, 16> &m);

struct ComponentNegativity {
    std::string kind;
    std::string label;
    WireSupport wires;
    double log2_negativity = 0;
};

struct NegativityReport {
    std::vector<ComponentNegativity> per_component;
    double total_log2_negativity = 0;
};

/// Per-component and total log2 circuit negativity under a frame assignment.
NegativityReport negativity_report(const Circuit &c, const FrameAssignment &fa);

/// log2 N_C(𝒢): Σ log2 N_ρi + Σ log2 N_Ul + Σ log2 max|W_Ei|.
double circuit_negativity(const Circuit &c, const FrameAssignment &fa);

/// Exact value of the trajectory sum Σ_{λ0..λL} W_E · Π W_U · W_ρ, contracted gate by gate over
/// the joint phase space. Intended for small circuits (4^N doubles of storage).
double trajectory_sum(const Circuit &c, const FrameAssignment &fa);

std::string negativity_report_json(const NegativityReport &r);

}  // namespace qpsim
