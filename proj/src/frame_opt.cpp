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

#include "qpsim/frame_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qpsim {

namespace {

constexpr size_t kNoTarget = std::numeric_limits<size_t>::max();
const double kLogGBound = std::log(kWignerGMax);

// Half-width of each coordinate line search.
constexpr double kLineWindow = std::numbers::pi / 2;
constexpr double kLineTol = 1e-5;
constexpr double kSweepTol = 1e-6;

size_t target_index(std::span<const size_t> targets, size_t segment) {
    auto it = std::find(targets.begin(), targets.end(), segment);
    return it == targets.end() ? kNoTarget : static_cast<size_t>(it - targets.begin());
}

std::array<double, kFreeParams> slice(std::span<const double> params, size_t t) {
    return {params[t * kFreeParams], params[t * kFreeParams + 1], params[t * kFreeParams + 2]};
}

// Minimises f along [lo, hi] by golden-section search; returns (argmin, value).
std::pair<double, double> golden_section(const std::function<double(double)> &f, double lo, double hi, size_t &evals) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evals += 2;
    while (b - a > kLineTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        evals++;
    }
    return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Coordinate-wise golden-section descent from x; never returns a worse point.
double local_descent(
    const Objective &objective, std::vector<double> &x, double fx, size_t max_sweeps,
    const std::vector<std::pair<double, double>> &bounds, size_t &evals) {
    std::vector<double> trial = x;
    for (size_t sweep = 0; sweep < max_sweeps; sweep++) {
        double start = fx;
        for (size_t i = 0; i < x.size(); i++) {
            double lo = x[i] - kLineWindow;
            double hi = x[i] + kLineWindow;
            if (!bounds.empty()) {
                lo = std::max(lo, bounds[i].first);
                hi = std::min(hi, bounds[i].second);
            }
            if (!(hi > lo)) {
                continue;
            }
            trial = x;
            auto line = [&](double v) {
                trial[i] = v;
                return objective(trial);
            };
            auto [best_v, best_f] = golden_section(line, lo, hi, evals);
            if (best_f < fx) {
                x[i] = best_v;
                fx = best_f;
            }
        }
        if (start - fx < kSweepTol) {
            break;
        }
    }
    return fx;
}

}  // namespace

Block block_for_targets(const Circuit &c, const Topology &topo, std::span<const size_t> targets) {
    Block b;
    for (size_t t : targets) {
        if (t >= topo.num_segments) {
            throw ValidationError("block_for_targets: unknown segment id " + std::to_string(t));
        }
        if (std::count(targets.begin(), targets.end(), t) > 1) {
            throw ValidationError("block_for_targets: duplicate segment id " + std::to_string(t));
        }
        b.targets.push_back(t);
    }
    auto touches = [&](std::span<const size_t> segs) {
        return std::any_of(segs.begin(), segs.end(), [&](size_t s) { return target_index(targets, s) != kNoTarget; });
    };
    for (uint32_t w = 0; w < c.num_wires; w++) {
        if (target_index(targets, topo.input_segment[w]) != kNoTarget) {
            b.states.push_back(w);
        }
    }
    for (size_t l = 0; l < c.gates.size(); l++) {
        if (touches(topo.gate_in[l]) || touches(topo.gate_out[l])) {
            b.gates.push_back(l);
        }
    }
    for (uint32_t w = 0; w < c.num_wires; w++) {
        if (target_index(targets, topo.effect_segment[w]) != kNoTarget) {
            b.effects.push_back(w);
        }
    }
    return b;
}

BlockObjective::BlockObjective(
    const Circuit &c, const Topology &topo, const FrameAssignment &fa, Block block,
    const std::vector<std::vector<double>> *ptm_cache)
    : circuit_(c), block_(std::move(block)) {
    if (fa.segments.size() != topo.num_segments) {
        throw ValidationError("BlockObjective: frame assignment does not cover the circuit");
    }
    for (size_t t : block_.targets) {
        kinds_.push_back(fa.segments.at(t).kind);
        start_frames_.push_back(fa.segments.at(t));
    }
    for (uint32_t w : block_.states) {
        state_target_.push_back(target_index(block_.targets, topo.input_segment[w]));
    }
    for (uint32_t w : block_.effects) {
        effect_target_.push_back(target_index(block_.targets, topo.effect_segment[w]));
    }
    for (size_t l : block_.gates) {
        const Gate &g = c.gates[l];
        GateTerm term;
        term.k = g.arity();
        term.partial = ptm_cache ? (*ptm_cache)[l] : pauli_transfer_matrix(g.matrix);
        for (size_t j = 0; j < term.k; j++) {
            size_t out_seg = topo.gate_out[l][j];
            size_t ti = target_index(block_.targets, out_seg);
            if (ti == kNoTarget) {
                apply_row_mode(term.partial, term.k, j, fa.segments[out_seg].f_coef);
            } else {
                term.out_modes.emplace_back(j, ti);
            }
            size_t in_seg = topo.gate_in[l][j];
            ti = target_index(block_.targets, in_seg);
            if (ti == kNoTarget) {
                apply_col_mode(term.partial, term.k, j, fa.segments[in_seg].g_coef);
            } else {
                term.in_modes.emplace_back(j, ti);
            }
        }
        gate_terms_.push_back(std::move(term));
    }
}

std::vector<double> BlockObjective::initial_params() const {
    std::vector<double> p;
    for (const auto &fp : start_frames_) {
        auto u = to_free_params(fp);
        p.insert(p.end(), u.begin(), u.end());
    }
    return p;
}

std::vector<std::pair<double, double>> BlockObjective::bounds() const {
    std::vector<std::pair<double, double>> b;
    for (FrameKind kind : kinds_) {
        for (size_t i = 0; i < kFreeParams; i++) {
            if (kind == FrameKind::wigner) {
                b.emplace_back(-kLogGBound, kLogGBound);
            } else {
                b.emplace_back(-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
            }
        }
    }
    return b;
}

std::vector<FramePair> BlockObjective::frames_at(std::span<const double> params) const {
    if (params.size() != num_params()) {
        throw ValidationError("block objective: parameter count does not match the targets");
    }
    std::vector<FramePair> frames;
    frames.reserve(kinds_.size());
    for (size_t t = 0; t < kinds_.size(); t++) {
        auto u = slice(params, t);
        if (kinds_[t] == FrameKind::wigner) {
            for (double v : u) {
                if (!(std::abs(v) <= kLogGBound + 1e-12)) {
                    throw ValidationError("block objective: Wigner parameter outside the g box");
                }
            }
        }
        frames.push_back(from_free_params(kinds_[t], u));
    }
    return frames;
}

std::vector<double> BlockObjective::component_values(std::span<const double> params) const {
    std::vector<FramePair> frames = frames_at(params);
    std::vector<double> values;
    for (size_t i = 0; i < block_.states.size(); i++) {
        const FramePair &fp = frames[state_target_[i]];
        values.push_back(std::log2(state_dist(circuit_.inputs[block_.states[i]].matrix, fp).negativity()));
    }
    std::vector<double> work;
    for (const auto &term : gate_terms_) {
        work = term.partial;
        for (auto [j, t] : term.out_modes) {
            apply_row_mode(work, term.k, j, frames[t].f_coef);
        }
        for (auto [j, t] : term.in_modes) {
            apply_col_mode(work, term.k, j, frames[t].g_coef);
        }
        size_t dim = size_t{1} << (2 * term.k);
        std::vector<double> col(dim, 0.0);
        for (size_t r = 0; r < dim; r++) {
            const double *row = &work[r * dim];
            for (size_t c = 0; c < dim; c++) {
                col[c] += std::abs(row[c]);
            }
        }
        values.push_back(std::log2(*std::max_element(col.begin(), col.end())));
    }
    for (size_t i = 0; i < block_.effects.size(); i++) {
        const FramePair &fp = frames[effect_target_[i]];
        values.push_back(std::log2(effect_dist(circuit_.effects[block_.effects[i]].matrix, fp).negativity()));
    }
    return values;
}

double BlockObjective::operator()(std::span<const double> params) const {
    double total = 0;
    for (double v : component_values(params)) {
        total += v;
    }
    return total;
}

double block_negativity(
    const Circuit &c, const FrameAssignment &fa, const Block &block, std::span<const double> params) {
    Topology topo(c);
    return BlockObjective(c, topo, fa, block)(params);
}

BasinHopResult basin_hop(
    const Objective &objective, std::vector<double> init, const OptConfig &cfg, std::mt19937_64 &rng,
    const std::vector<std::pair<double, double>> &bounds) {
    BasinHopResult res;
    double f0 = objective(init);
    res.evaluations = 1;
    if (!std::isfinite(f0)) {
        throw ValidationError("basin_hop: objective is not finite at the initial point");
    }
    auto clamp_into = [&](std::vector<double> &x) {
        if (bounds.empty()) {
            return;
        }
        for (size_t i = 0; i < x.size(); i++) {
            x[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
        }
    };
    res.params = init;
    res.value = local_descent(objective, res.params, f0, cfg.local_iters, bounds, res.evaluations);
    std::normal_distribution<double> kick(0.0, cfg.step_scale);
    for (size_t h = 0; h < cfg.hops; h++) {
        std::vector<double> x = res.params;
        for (double &v : x) {
            v += kick(rng);
        }
        clamp_into(x);
        double fx = objective(x);
        res.evaluations++;
        if (!std::isfinite(fx)) {
            continue;
        }
        fx = local_descent(objective, x, fx, cfg.local_iters, bounds, res.evaluations);
        if (fx < res.value) {
            res.value = fx;
            res.params = std::move(x);
        }
    }
    return res;
}

OptResult optimise_frames(const Circuit &c, const FrameAssignment &fa0, const OptConfig &cfg) {
    if (cfg.ell == 0) {
        throw ValidationError("optimise_frames: ell must be at least 1");
    }
    Topology topo(c);
    if (fa0.segments.size() != topo.num_segments) {
        throw ValidationError("optimise_frames: frame assignment does not cover the circuit");
    }
    size_t num_segments = topo.num_segments;
    size_t chunks = (num_segments + cfg.ell - 1) / cfg.ell;
    size_t cycles = cfg.cycles.value_or(chunks);
    if (cycles == 0) {
        throw ValidationError("optimise_frames: cycles must be at least 1");
    }
    std::vector<std::vector<double>> ptms;
    for (const auto &g : c.gates) {
        ptms.push_back(pauli_transfer_matrix(g.matrix));
    }
    std::mt19937_64 rng = make_rng(cfg.seed);
    OptResult res{fa0, {}};
    double total = circuit_negativity(c, res.frames);
    res.trace.push_back(total);
    std::vector<size_t> all_ids(num_segments);
    for (size_t i = 0; i < num_segments; i++) {
        all_ids[i] = i;
    }
    for (size_t cycle = 0; cycle < cycles; cycle++) {
        std::vector<size_t> targets;
        if (cfg.selection == TargetSelection::sequential) {
            size_t start = (cycle % chunks) * cfg.ell;
            for (size_t s = start; s < std::min(num_segments, start + cfg.ell); s++) {
                targets.push_back(s);
            }
        } else {
            std::vector<size_t> ids = all_ids;
            std::shuffle(ids.begin(), ids.end(), rng);
            targets.assign(ids.begin(), ids.begin() + std::min(cfg.ell, num_segments));
            std::sort(targets.begin(), targets.end());
        }
        BlockObjective objective(c, topo, res.frames, block_for_targets(c, topo, targets), &ptms);
        std::vector<double> init = objective.initial_params();
        double before = objective(init);
        BasinHopResult best = basin_hop(
            [&](std::span<const double> p) { return objective(p); }, init, cfg, rng, objective.bounds());
        if (best.value < before) {
            std::vector<FramePair> frames = objective.frames_at(best.params);
            for (size_t t = 0; t < targets.size(); t++) {
                res.frames.segments[targets[t]] = std::move(frames[t]);
            }
            total += best.value - before;
        }
        res.trace.push_back(total);
    }
    return res;
}

}  // namespace qpsim
