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

#include "qpsim/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "json.hpp"

namespace qpsim {

namespace {

constexpr uint64_t kChunk = 1 << 14;

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0;
    double comp = 0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const {
        return sum + comp;
    }
};

struct ChunkResult {
    CompensatedSum sum;
    CompensatedSum sum_sq;
};

}  // namespace

double sample_bound(double epsilon, double delta, double n_c) {
    if (!(epsilon > 0) || !(delta > 0 && delta < 1) || !(n_c >= 1)) {
        throw ValidationError("required_samples: need epsilon > 0, 0 < delta < 1 and N_C >= 1");
    }
    return 2.0 / (epsilon * epsilon) * n_c * n_c * std::log(2.0 / delta);
}

uint64_t required_samples(double epsilon, double delta, double n_c) {
    return static_cast<uint64_t>(std::ceil(sample_bound(epsilon, delta, n_c)));
}

SignedTable::SignedTable(std::vector<double> v) : values(std::move(v)) {
    cumulative.reserve(values.size());
    for (double x : values) {
        norm += std::abs(x);
        cumulative.push_back(norm);
    }
}

size_t SignedTable::draw(double u) const {
    double target = u * norm;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    size_t idx = static_cast<size_t>(it - cumulative.begin());
    if (idx >= values.size()) {
        idx = values.size() - 1;
    }
    // Skip zero-weight entries that share a cumulative value.
    while (values[idx] == 0.0 && idx > 0) {
        idx--;
    }
    return idx;
}

CompiledCircuit compile(const Circuit &c, const FrameAssignment &fa) {
    validate_circuit(c);
    Topology topo(c);
    if (fa.segments.size() != topo.num_segments) {
        throw ValidationError("compile: frame assignment does not cover the circuit");
    }
    CompiledCircuit cc;
    cc.num_wires = c.num_wires;
    double log_nc = 0;
    for (size_t w = 0; w < c.num_wires; w++) {
        QuasiDist q = state_dist(c.inputs[w].matrix, fa.segments[topo.input_segment[w]]);
        log_nc += std::log2(q.negativity());
        cc.inputs.emplace_back(std::move(q.values));
    }
    for (size_t l = 0; l < c.gates.size(); l++) {
        const Gate &g = c.gates[l];
        CompiledGate cg;
        cg.support = g.support;
        cg.k = g.arity();
        cg.tensor = gate_tensor(g, fa.pick(topo.gate_in[l]), fa.pick(topo.gate_out[l]));
        size_t dim = cg.tensor.dim;
        for (size_t col = 0; col < dim; col++) {
            if (!(cg.tensor.col_norms[col] > 0)) {
                throw ValidationError("compile: transition matrix has an all-zero column");
            }
            std::vector<double> column(dim);
            for (size_t r = 0; r < dim; r++) {
                column[r] = cg.tensor(r, col);
            }
            cg.columns.emplace_back(std::move(column));
        }
        log_nc += std::log2(cg.tensor.negativity);
        cc.gates.push_back(std::move(cg));
    }
    for (size_t w = 0; w < c.num_wires; w++) {
        QuasiDist q = effect_dist(c.effects[w].matrix, fa.segments[topo.effect_segment[w]]);
        log_nc += std::log2(q.negativity());
        cc.effects.push_back(std::move(q.values));
    }
    cc.n_c_log2 = log_nc;
    cc.max_contribution = std::exp2(log_nc);
    return cc;
}

double sample_trajectory(const CompiledCircuit &cc, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    size_t n = cc.num_wires;
    // Per-wire phase-point indices (0..3).
    std::vector<uint8_t> point(n);
    double weight = 1.0;
    bool negative = false;
    for (size_t w = 0; w < n; w++) {
        const SignedTable &t = cc.inputs[w];
        size_t idx = t.draw(uniform(rng));
        point[w] = static_cast<uint8_t>(idx);
        weight *= t.norm;
        negative ^= t.values[idx] < 0;
    }
    for (const auto &g : cc.gates) {
        size_t in = 0;
        for (uint32_t w : g.support) {
            in = in * 4 + point[w];
        }
        const SignedTable &col = g.columns[in];
        size_t out = col.draw(uniform(rng));
        weight *= col.norm;
        negative ^= col.values[out] < 0;
        for (size_t j = g.k; j-- > 0;) {
            point[g.support[j]] = static_cast<uint8_t>(out & 3);
            out >>= 2;
        }
    }
    double effect = 1.0;
    for (size_t w = 0; w < n; w++) {
        effect *= cc.effects[w][point[w]];
    }
    return (negative ? -weight : weight) * effect;
}

double exact_expectation(const CompiledCircuit &cc) {
    size_t n = cc.num_wires;
    std::vector<uint8_t> point(n);
    CompensatedSum total;
    // prob: probability of the partial trajectory; value: signed weight accumulated so far.
    auto walk_gates = [&](auto &&self, size_t l, double prob, double value) -> void {
        if (l == cc.gates.size()) {
            double effect = 1.0;
            for (size_t w = 0; w < n; w++) {
                effect *= cc.effects[w][point[w]];
            }
            total.add(prob * value * effect);
            return;
        }
        const CompiledGate &g = cc.gates[l];
        size_t in = 0;
        for (uint32_t w : g.support) {
            in = in * 4 + point[w];
        }
        std::vector<uint8_t> saved(g.k);
        for (size_t j = 0; j < g.k; j++) {
            saved[j] = point[g.support[j]];
        }
        const SignedTable &col = g.columns[in];
        for (size_t out = 0; out < col.values.size(); out++) {
            double v = col.values[out];
            if (v == 0.0) {
                continue;
            }
            size_t code = out;
            for (size_t j = g.k; j-- > 0;) {
                point[g.support[j]] = static_cast<uint8_t>(code & 3);
                code >>= 2;
            }
            self(self, l + 1, prob * std::abs(v) / col.norm, value * std::copysign(col.norm, v));
        }
        for (size_t j = 0; j < g.k; j++) {
            point[g.support[j]] = saved[j];
        }
    };
    auto walk_inputs = [&](auto &&self, size_t w, double prob, double value) -> void {
        if (w == n) {
            walk_gates(walk_gates, 0, prob, value);
            return;
        }
        const SignedTable &t = cc.inputs[w];
        for (size_t idx = 0; idx < t.values.size(); idx++) {
            double v = t.values[idx];
            if (v == 0.0) {
                continue;
            }
            point[w] = static_cast<uint8_t>(idx);
            self(self, w + 1, prob * std::abs(v) / t.norm, value * std::copysign(t.norm, v));
        }
    };
    walk_inputs(walk_inputs, 0, 1.0, 1.0);
    return total.value();
}

EstimateReport estimate(const CompiledCircuit &cc, uint64_t m, uint64_t seed, size_t workers) {
    if (m == 0) {
        throw ValidationError("estimate: need at least one sample");
    }
    workers = std::max<size_t>(1, workers);
    auto start = std::chrono::steady_clock::now();
    uint64_t num_chunks = (m + kChunk - 1) / kChunk;
    std::vector<ChunkResult> chunks(num_chunks);
    auto run = [&](size_t worker) {
        for (uint64_t ci = worker; ci < num_chunks; ci += workers) {
            std::mt19937_64 rng = make_rng(seed, ci + 1);
            uint64_t count = std::min(kChunk, m - ci * kChunk);
            ChunkResult &res = chunks[ci];
            for (uint64_t s = 0; s < count; s++) {
                double x = sample_trajectory(cc, rng);
                res.sum.add(x);
                res.sum_sq.add(x * x);
            }
        }
    };
    if (workers == 1 || num_chunks == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(run, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    CompensatedSum sum;
    CompensatedSum sum_sq;
    for (const auto &c : chunks) {
        sum.add(c.sum.value());
        sum_sq.add(c.sum_sq.value());
    }
    EstimateReport rep;
    double md = static_cast<double>(m);
    rep.p_est = sum.value() / md;
    rep.samples = m;
    rep.n_c_log2 = cc.n_c_log2;
    double var = m > 1 ? std::max(0.0, (sum_sq.value() - md * rep.p_est * rep.p_est) / (md - 1)) : 0.0;
    rep.std_error = std::sqrt(var / md);
    rep.seed = seed;
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string estimate_report_json(const EstimateReport &r) {
    nlohmann::json doc{
        {"p_est", r.p_est},
        {"samples", r.samples},
        {"n_c_log2", r.n_c_log2},
        {"std_error", r.std_error},
        {"elapsed_seconds", r.elapsed_seconds},
        {"seed", r.seed},
    };
    return doc.dump(2) + "\n";
}

}  // namespace qpsim
