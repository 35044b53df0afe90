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

#include "qpsim/quasiprob.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "json.hpp"

namespace qpsim {

using json = nlohmann::json;

namespace {

double real_or_throw(cplx v, const char *what) {
    if (std::abs(v.imag()) > kTol) {
        throw ValidationError(std::string("frame-consistency error: complex ") + what);
    }
    return v.real();
}

void check_arity(const Gate &g, size_t n_in, size_t n_out) {
    if (n_in != g.arity() || n_out != g.arity()) {
        throw ValidationError("gate_tensor: frame list size does not match gate arity");
    }
}

// Pauli string with per-wire digits a_j (0 I, 1 X, 2 Y, 3 Z), wire 0 most significant, acts as
// P|c> = phase(c) |c ^ x>.
struct PauliString {
    size_t x = 0;
    size_t z = 0;
    cplx y_phase = 1.0;

    PauliString(size_t index, size_t k) {
        size_t num_y = 0;
        for (size_t j = 0; j < k; j++) {
            size_t digit = (index >> (2 * (k - 1 - j))) & 3;
            size_t bit = size_t{1} << (k - 1 - j);
            if (digit == 1 || digit == 2) {
                x |= bit;
            }
            if (digit == 2 || digit == 3) {
                z |= bit;
            }
            num_y += digit == 2;
        }
        static const cplx powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        y_phase = powers[num_y % 4];
    }

    cplx phase(size_t c) const {
        return (std::popcount(z & c) & 1) ? -y_phase : y_phase;
    }
};

// Joint index helpers over a register of `n` base-4 digits, digit 0 most significant.
size_t digit_at(size_t index, size_t n, size_t pos) {
    return (index >> (2 * (n - 1 - pos))) & 3;
}

size_t with_digit(size_t index, size_t n, size_t pos, size_t value) {
    size_t shift = 2 * (n - 1 - pos);
    return (index & ~(size_t{3} << shift)) | (value << shift);
}

}  // namespace

Topology::Topology(const Circuit &c) : num_wires(c.num_wires) {
    std::vector<size_t> current(c.num_wires);
    for (size_t w = 0; w < c.num_wires; w++) {
        current[w] = w;
        input_segment.push_back(w);
        segment_wire.push_back(static_cast<uint32_t>(w));
    }
    size_t next = c.num_wires;
    for (const auto &g : c.gates) {
        std::vector<size_t> in;
        std::vector<size_t> out;
        for (uint32_t w : g.support) {
            if (w >= c.num_wires) {
                throw ValidationError("Topology: gate wire out of range");
            }
            in.push_back(current[w]);
            out.push_back(next);
            segment_wire.push_back(w);
            current[w] = next++;
        }
        gate_in.push_back(std::move(in));
        gate_out.push_back(std::move(out));
    }
    effect_segment = current;
    num_segments = next;
}

FrameAssignment FrameAssignment::uniform(const Topology &topo, const FramePair &fp) {
    return FrameAssignment{std::vector<FramePair>(topo.num_segments, fp)};
}

FrameAssignment FrameAssignment::reference(const Topology &topo, FrameKind kind) {
    return uniform(topo, reference_frame(kind));
}

std::vector<const FramePair *> FrameAssignment::pick(std::span<const size_t> ids) const {
    std::vector<const FramePair *> out;
    out.reserve(ids.size());
    for (size_t id : ids) {
        out.push_back(&segments.at(id));
    }
    return out;
}

FrameAssignment parse_frame_assignment(std::string_view text, const Topology &topo, FrameKind default_kind) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("frame assignment JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw ValidationError("frame assignment JSON: top level must be an array");
    }
    FrameAssignment fa = FrameAssignment::reference(topo, default_kind);
    std::vector<bool> seen(topo.num_segments, false);
    for (size_t k = 0; k < doc.size(); k++) {
        const json &e = doc[k];
        std::string where = "frames[" + std::to_string(k) + "]";
        if (!e.is_object() || !e.contains("segment_id") || !e.contains("kind") || !e.contains("params")) {
            throw ValidationError(where + ": needs segment_id, kind and params");
        }
        if (!e["segment_id"].is_number_integer()) {
            throw ValidationError(where + ": segment_id must be an integer");
        }
        int64_t id = e["segment_id"].get<int64_t>();
        if (id < 0 || static_cast<size_t>(id) >= topo.num_segments) {
            throw ValidationError(where + ": segment_id " + std::to_string(id) + " does not exist");
        }
        if (seen[id]) {
            throw ValidationError(where + ": duplicate segment_id " + std::to_string(id));
        }
        seen[id] = true;
        try {
            fa.segments[id] = frame_from_params(
                parse_frame_kind(e["kind"].get<std::string>()), e["params"].get<std::vector<double>>());
        } catch (const ValidationError &err) {
            throw ValidationError(where + ": " + err.what());
        } catch (const json::exception &err) {
            throw ValidationError(where + ": " + err.what());
        }
    }
    return fa;
}

std::string serialize_frame_assignment(const FrameAssignment &fa) {
    json doc = json::array();
    for (size_t id = 0; id < fa.segments.size(); id++) {
        const FramePair &fp = fa.segments[id];
        doc.push_back({{"segment_id", id}, {"kind", frame_kind_name(fp.kind)}, {"params", fp.params}});
    }
    return doc.dump(2) + "\n";
}

double QuasiDist::negativity() const {
    double acc = 0;
    for (double v : values) {
        acc = role == DistRole::state ? acc + std::abs(v) : std::max(acc, std::abs(v));
    }
    return acc;
}

QuasiDist state_dist(const CMatrix &rho, const FramePair &fp) {
    if (!is_hermitian(rho)) {
        throw ValidationError("state_dist: state is not Hermitian");
    }
    QuasiDist q{{}, DistRole::state};
    for (const auto &f : fp.f_ops) {
        q.values.push_back(real_or_throw(trace_inner(f, rho), "state quasi-probability"));
    }
    return q;
}

QuasiDist effect_dist(const CMatrix &effect, const FramePair &fp) {
    if (!is_hermitian(effect)) {
        throw ValidationError("effect_dist: effect is not Hermitian");
    }
    QuasiDist q{{}, DistRole::effect};
    for (const auto &g : fp.g_ops) {
        q.values.push_back(real_or_throw(trace_inner(effect, g), "effect quasi-probability"));
    }
    return q;
}

std::vector<double> pauli_transfer_matrix(const CMatrix &u) {
    size_t dim = u.rows();
    size_t k = static_cast<size_t>(std::countr_zero(dim));
    if (!u.is_square() || (size_t{1} << k) != dim) {
        throw ValidationError("pauli_transfer_matrix: expected a 2^k x 2^k matrix");
    }
    size_t n = size_t{1} << (2 * k);
    std::vector<PauliString> paulis;
    paulis.reserve(n);
    for (size_t a = 0; a < n; a++) {
        paulis.emplace_back(a, k);
    }
    CMatrix u_dag = u.adjoint();
    std::vector<double> ptm(n * n);
    double scale = 1.0 / static_cast<double>(dim);
    CMatrix up(dim, dim);
    for (size_t b = 0; b < n; b++) {
        const PauliString &pb = paulis[b];
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                up(r, c) = u(r, c ^ pb.x) * pb.phase(c);
            }
        }
        CMatrix m = up * u_dag;
        for (size_t a = 0; a < n; a++) {
            const PauliString &pa = paulis[a];
            cplx acc{};
            for (size_t j = 0; j < dim; j++) {
                acc += pa.phase(j) * m(j, j ^ pa.x);
            }
            ptm[a * n + b] = acc.real() * scale;
        }
    }
    return ptm;
}

void apply_row_mode(std::span<double> w, size_t k, size_t mode, const std::array<double, 16> &m) {
    size_t n = size_t{1} << (2 * k);
    size_t stride = size_t{1} << (2 * (k - 1 - mode));
    std::vector<double> tmp(4 * n);
    for (size_t outer = 0; outer < n; outer += 4 * stride) {
        for (size_t inner = 0; inner < stride; inner++) {
            size_t base = outer + inner;
            for (size_t y = 0; y < 4; y++) {
                std::copy_n(&w[(base + y * stride) * n], n, &tmp[y * n]);
            }
            for (size_t x = 0; x < 4; x++) {
                double *dst = &w[(base + x * stride) * n];
                const double m0 = m[x * 4 + 0], m1 = m[x * 4 + 1], m2 = m[x * 4 + 2], m3 = m[x * 4 + 3];
                const double *t0 = &tmp[0];
                const double *t1 = &tmp[n];
                const double *t2 = &tmp[2 * n];
                const double *t3 = &tmp[3 * n];
                for (size_t c = 0; c < n; c++) {
                    dst[c] = m0 * t0[c] + m1 * t1[c] + m2 * t2[c] + m3 * t3[c];
                }
            }
        }
    }
}

void apply_col_mode(std::span<double> w, size_t k, size_t mode, const std::array<double, 16> &m) {
    size_t n = size_t{1} << (2 * k);
    size_t stride = size_t{1} << (2 * (k - 1 - mode));
    for (size_t r = 0; r < n; r++) {
        double *row = &w[r * n];
        for (size_t outer = 0; outer < n; outer += 4 * stride) {
            for (size_t inner = 0; inner < stride; inner++) {
                double *p = row + outer + inner;
                double v0 = p[0], v1 = p[stride], v2 = p[2 * stride], v3 = p[3 * stride];
                for (size_t x = 0; x < 4; x++) {
                    p[x * stride] = v0 * m[0 * 4 + x] + v1 * m[1 * 4 + x] + v2 * m[2 * 4 + x] + v3 * m[3 * 4 + x];
                }
            }
        }
    }
}

void finalize_tensor(TransitionTensor &t) {
    t.col_norms.assign(t.dim, 0.0);
    for (size_t r = 0; r < t.dim; r++) {
        const double *row = &t.matrix[r * t.dim];
        for (size_t c = 0; c < t.dim; c++) {
            t.col_norms[c] += std::abs(row[c]);
        }
    }
    t.negativity = t.dim ? *std::max_element(t.col_norms.begin(), t.col_norms.end()) : 0.0;
}

TransitionTensor gate_tensor_from_ptm(
    std::span<const double> ptm, size_t k, std::span<const FramePair *const> in_frames,
    std::span<const FramePair *const> out_frames) {
    if (in_frames.size() != k || out_frames.size() != k) {
        throw ValidationError("gate_tensor: frame list size does not match gate arity");
    }
    TransitionTensor t;
    t.dim = size_t{1} << (2 * k);
    if (ptm.size() != t.dim * t.dim) {
        throw ValidationError("gate_tensor: transfer matrix size does not match arity");
    }
    t.matrix.assign(ptm.begin(), ptm.end());
    for (size_t j = 0; j < k; j++) {
        apply_row_mode(t.matrix, k, j, out_frames[j]->f_coef);
        apply_col_mode(t.matrix, k, j, in_frames[j]->g_coef);
    }
    finalize_tensor(t);
    return t;
}

TransitionTensor gate_tensor(
    const Gate &g, std::span<const FramePair *const> in_frames, std::span<const FramePair *const> out_frames) {
    check_arity(g, in_frames.size(), out_frames.size());
    return gate_tensor_from_ptm(pauli_transfer_matrix(g.matrix), g.arity(), in_frames, out_frames);
}

TransitionTensor gate_tensor_reference(
    const Gate &g, std::span<const FramePair *const> in_frames, std::span<const FramePair *const> out_frames) {
    check_arity(g, in_frames.size(), out_frames.size());
    size_t k = g.arity();
    TransitionTensor t;
    t.dim = size_t{1} << (2 * k);
    t.matrix.assign(t.dim * t.dim, 0.0);
    auto product_op = [&](std::span<const FramePair *const> frames, size_t point, bool dual) {
        CMatrix op = CMatrix::identity(1);
        for (size_t j = 0; j < k; j++) {
            size_t lam = digit_at(point, k, j);
            op = kron(op, dual ? frames[j]->g_ops[lam] : frames[j]->f_ops[lam]);
        }
        return op;
    };
    std::vector<CMatrix> f_out;
    for (size_t p = 0; p < t.dim; p++) {
        f_out.push_back(product_op(out_frames, p, false));
    }
    CMatrix u_dag = g.matrix.adjoint();
    for (size_t col = 0; col < t.dim; col++) {
        CMatrix conj = g.matrix * product_op(in_frames, col, true) * u_dag;
        for (size_t row = 0; row < t.dim; row++) {
            t.matrix[row * t.dim + col] = real_or_throw(trace_inner(f_out[row], conj), "transition entry");
        }
    }
    finalize_tensor(t);
    return t;
}

NegativityReport negativity_report(const Circuit &c, const FrameAssignment &fa) {
    Topology topo(c);
    if (fa.segments.size() != topo.num_segments) {
        throw ValidationError("frame assignment does not cover the circuit");
    }
    NegativityReport rep;
    for (uint32_t w = 0; w < c.num_wires; w++) {
        double n = state_dist(c.inputs[w].matrix, fa.segments[topo.input_segment[w]]).negativity();
        rep.per_component.push_back({"state", c.inputs[w].name.empty() ? "rho" : c.inputs[w].name, {w}, std::log2(n)});
    }
    for (size_t l = 0; l < c.gates.size(); l++) {
        auto in = fa.pick(topo.gate_in[l]);
        auto out = fa.pick(topo.gate_out[l]);
        double n = gate_tensor(c.gates[l], in, out).negativity;
        rep.per_component.push_back({"gate", c.gates[l].label, c.gates[l].support, std::log2(n)});
    }
    for (uint32_t w = 0; w < c.num_wires; w++) {
        double n = effect_dist(c.effects[w].matrix, fa.segments[topo.effect_segment[w]]).negativity();
        rep.per_component.push_back({"effect", c.effects[w].name.empty() ? "E" : c.effects[w].name, {w}, std::log2(n)});
    }
    for (const auto &comp : rep.per_component) {
        rep.total_log2_negativity += comp.log2_negativity;
    }
    return rep;
}

double circuit_negativity(const Circuit &c, const FrameAssignment &fa) {
    return negativity_report(c, fa).total_log2_negativity;
}

double trajectory_sum(const Circuit &c, const FrameAssignment &fa) {
    Topology topo(c);
    if (fa.segments.size() != topo.num_segments) {
        throw ValidationError("frame assignment does not cover the circuit");
    }
    size_t n = c.num_wires;
    if (n > 8) {
        throw ValidationError("trajectory_sum: too many wires for exhaustive contraction");
    }
    size_t dim = size_t{1} << (2 * n);
    std::vector<double> vec(dim, 1.0);
    for (size_t w = 0; w < n; w++) {
        QuasiDist q = state_dist(c.inputs[w].matrix, fa.segments[topo.input_segment[w]]);
        for (size_t idx = 0; idx < dim; idx++) {
            vec[idx] *= q.values[digit_at(idx, n, w)];
        }
    }
    for (size_t l = 0; l < c.gates.size(); l++) {
        const Gate &g = c.gates[l];
        TransitionTensor t = gate_tensor(g, fa.pick(topo.gate_in[l]), fa.pick(topo.gate_out[l]));
        size_t k = g.arity();
        std::vector<double> next(dim, 0.0);
        for (size_t idx = 0; idx < dim; idx++) {
            if (vec[idx] == 0.0) {
                continue;
            }
            size_t in = 0;
            for (size_t j = 0; j < k; j++) {
                in = in * 4 + digit_at(idx, n, g.support[j]);
            }
            for (size_t out = 0; out < t.dim; out++) {
                double w = t(out, in);
                if (w == 0.0) {
                    continue;
                }
                size_t target = idx;
                for (size_t j = 0; j < k; j++) {
                    target = with_digit(target, n, g.support[j], digit_at(out, k, j));
                }
                next[target] += w * vec[idx];
            }
        }
        vec = std::move(next);
    }
    double total = 0;
    std::vector<QuasiDist> effects;
    for (size_t w = 0; w < n; w++) {
        effects.push_back(effect_dist(c.effects[w].matrix, fa.segments[topo.effect_segment[w]]));
    }
    for (size_t idx = 0; idx < dim; idx++) {
        double term = vec[idx];
        for (size_t w = 0; w < n && term != 0.0; w++) {
            term *= effects[w].values[digit_at(idx, n, w)];
        }
        total += term;
    }
    return total;
}

std::string negativity_report_json(const NegativityReport &r) {
    json doc;
    doc["per_component"] = json::array();
    for (const auto &comp : r.per_component) {
        doc["per_component"].push_back(
            {{"kind", comp.kind}, {"label", comp.label}, {"wires", comp.wires}, {"log2_negativity", comp.log2_negativity}});
    }
    doc["total_log2_negativity"] = r.total_log2_negativity;
    return doc.dump(2) + "\n";
}

}  // namespace qpsim
