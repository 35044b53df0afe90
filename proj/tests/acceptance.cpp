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

// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "qpsim/experiments.hpp"
#include "qpsim/frame_opt.hpp"
#include "qpsim/merging.hpp"
#include "qpsim/oracle.hpp"
#include "qpsim/sampler.hpp"
#include "test_util.hpp"

using namespace qpsim;
using namespace qpsim_test;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

double neg(const Gate &g, const std::vector<const FramePair *> &in, const std::vector<const FramePair *> &out) {
    return gate_tensor(g, in, out).negativity;
}

double ref_neg(const Gate &g, FrameKind kind) {
    FramePair ref = reference_frame(kind);
    std::vector<const FramePair *> fr(g.arity(), &ref);
    return neg(g, fr, fr);
}

Outcome golden_anchors() {
    double worst = 0;
    double t = ref_neg(library_gate("T", {0}), FrameKind::rotated_pauli);
    double ccx = ref_neg(library_gate("CCX", {0, 1, 2}), FrameKind::rotated_pauli);
    worst = std::max(worst, std::abs(t - std::sqrt(2.0)));
    worst = std::max(worst, std::abs(t * t * t * t - 4.0));
    worst = std::max(worst, std::abs(ccx - 2.0));
    for (auto [name, wires] : {std::pair<const char *, WireSupport>{"H", {0}}, {"S", {0}}, {"CX", {0, 1}}, {"CZ", {0, 1}}}) {
        worst = std::max(worst, std::abs(ref_neg(library_gate(name, wires), FrameKind::rotated_pauli) - 1.0));
    }
    double wh = ref_neg(library_gate("H", {0}), FrameKind::wigner);
    double wcx = ref_neg(library_gate("CX", {0, 1}), FrameKind::wigner);
    bool pass = worst < 1e-10 && wh > 1 + 1e-6 && wcx > 1 + 1e-6;
    return {pass, fmt("N_T=%.12f N_Toffoli=%.12f max_err=%.1e wigner(H,CX)=(%.6f", t, ccx, worst, wh) +
                      fmt(", %.6f)", wcx)};
}

Outcome frame_duality() {
    std::mt19937_64 rng(101);
    double worst = 0;
    for (auto kind : {FrameKind::wigner, FrameKind::rotated_pauli}) {
        for (size_t i = 0; i < 100; i++) {
            worst = std::max(worst, check_duality(random_frame(kind, rng)));
        }
    }
    return {worst < 1e-9, fmt("max duality error %.2e over 200 frames", worst)};
}

Outcome trajectory_identity() {
    std::mt19937_64 rng(202);
    double worst = 0;
    for (size_t i = 0; i < 50; i++) {
        Circuit c = random_small_circuit(1 + i % 3, 1 + (i / 3) % 3, rng);
        FrameAssignment fa = random_assignment(Topology(c), rng);
        worst = std::max(worst, std::abs(trajectory_sum(c, fa) - dense_probability(c)));
    }
    return {worst < 1e-8, fmt("max |sum - oracle| %.2e over 50 circuits", worst)};
}

// Random connected pair on up to three wires, arities 1 or 2.
std::pair<Gate, Gate> connected_pair(std::mt19937_64 &rng) {
    std::uniform_int_distribution<uint32_t> wire(0, 2);
    auto draw = [&](std::optional<uint32_t> must) {
        size_t k = 1 + rng() % 2;
        WireSupport s;
        if (must) {
            s.push_back(*must);
        }
        while (s.size() < k) {
            uint32_t w = wire(rng);
            if (std::find(s.begin(), s.end(), w) == s.end()) {
                s.push_back(w);
            }
        }
        std::shuffle(s.begin(), s.end(), rng);
        return matrix_gate(haar_unitary(size_t{1} << k, rng), s);
    };
    Gate u = draw(std::nullopt);
    Gate v = draw(u.support[rng() % u.arity()]);
    return {u, v};
}

Outcome merge_subadditivity() {
    std::mt19937_64 rng(303);
    double worst = -1e300;
    for (auto kind : {FrameKind::wigner, FrameKind::rotated_pauli}) {
        for (size_t i = 0; i < 1000; i++) {
            auto [u, v] = connected_pair(rng);
            // Frames per wire before U, between U and V, and after V.
            std::vector<FramePair> a, b, c;
            for (size_t w = 0; w < 3; w++) {
                a.push_back(random_frame(kind, rng));
                b.push_back(random_frame(kind, rng));
                c.push_back(random_frame(kind, rng));
            }
            auto in_u = [&](uint32_t w) { return std::find(u.support.begin(), u.support.end(), w) != u.support.end(); };
            auto in_v = [&](uint32_t w) { return std::find(v.support.begin(), v.support.end(), w) != v.support.end(); };
            std::vector<const FramePair *> ui, uo, vi, vo, mi, mo;
            for (uint32_t w : u.support) {
                ui.push_back(&a[w]);
                uo.push_back(&b[w]);
            }
            for (uint32_t w : v.support) {
                vi.push_back(in_u(w) ? &b[w] : &a[w]);
                vo.push_back(&c[w]);
            }
            Gate m = *merge_two(v, u, 3);
            for (uint32_t w : m.support) {
                mi.push_back(&a[w]);
                mo.push_back(in_v(w) ? &c[w] : &b[w]);
            }
            double slack = neg(m, mi, mo) - neg(u, ui, uo) * neg(v, vi, vo);
            worst = std::max(worst, slack);
        }
    }
    return {worst <= 1e-9, fmt("max N_VU - N_V N_U = %.3e over 2000 pairs", worst)};
}

Outcome middle_frame_chain() {
    std::mt19937_64 rng(404);
    double worst_upper = -1e300, worst_lower = -1e300;
    for (size_t i = 0; i < 100; i++) {
        Circuit c = blank_circuit(1);
        Gate u = matrix_gate(haar_unitary(2, rng), {0});
        Gate v = matrix_gate(haar_unitary(2, rng), {0});
        c.gates = {u, v};
        Topology topo(c);
        for (auto kind : {FrameKind::wigner, FrameKind::rotated_pauli}) {
            FrameAssignment fa = FrameAssignment::reference(topo, kind);
            BlockObjective obj(c, topo, fa, block_for_targets(c, topo, std::vector<size_t>{1}));
            OptConfig cfg;
            cfg.hops = 20;
            BasinHopResult best = basin_hop(
                [&](std::span<const double> p) { return obj(p); }, obj.initial_params(), cfg, rng, obj.bounds());
            double opt = std::exp2(best.value);
            double product = ref_neg(u, kind) * ref_neg(v, kind);
            double merged = ref_neg(*merge_two(v, u, 1), kind);
            worst_upper = std::max(worst_upper, opt - product);
            worst_lower = std::max(worst_lower, merged - opt);
        }
    }
    bool pass = worst_upper <= 1e-12 && worst_lower <= 1e-6;
    return {pass, fmt("max(opt - N_V N_U) = %.2e, max(N_VU - opt) = %.2e over 200 optimisations", worst_upper,
                      worst_lower)};
}

Outcome merging_correctness() {
    double worst_unitary = 0, worst_increase = -1e300;
    for (uint64_t seed = 0; seed < 100; seed++) {
        std::mt19937_64 rng = make_rng(505, seed);
        Circuit c = random_small_circuit(5, 20, rng);
        CMatrix u0 = circuit_unitary(c);
        for (size_t n : {2, 3, 4}) {
            Circuit m = merge_circuit(c, MergeConfig{n});
            CMatrix u1 = circuit_unitary(m);
            if (!equal_up_to_phase(u0, u1, 1e-8)) {
                worst_unitary = 1;
            }
            for (auto kind : {FrameKind::wigner, FrameKind::rotated_pauli}) {
                double before = circuit_negativity(c, FrameAssignment::reference(Topology(c), kind));
                double after = circuit_negativity(m, FrameAssignment::reference(Topology(m), kind));
                worst_increase = std::max(worst_increase, after - before);
            }
        }
    }
    bool pass = worst_unitary == 0 && worst_increase <= 1e-9;
    return {pass, fmt("unitary mismatches %.0f, max log2 increase %.3e over 300 merges", worst_unitary, worst_increase)};
}

Outcome fig2() {
    CliffordTBlockParams p;
    p.seed = 2;
    CliffordTBlockSummary s = run_clifford_t_blocks(p);
    return {s.frac_log4_below >= 0.85,
            fmt("frac log4(N)/t < 0.272 = %.2f (mean %.4f); log2(N)/t: frac below %.2f, mean %.4f", s.frac_log4_below,
                s.mean_log4_per_t, s.frac_log2_below, s.mean_log2_per_t)};
}

Outcome fig3() {
    ReductionParams p;
    p.families = {FrameKind::wigner};
    p.seed = 3;
    std::vector<ReductionTrace> traces = run_reduction(p);
    bool monotone = true;
    double final_n2[6]{}, final_n4[6]{};
    double unmerged = 0, best = 0;
    for (const auto &t : traces) {
        for (size_t i = 1; i < t.trace.size(); i++) {
            monotone &= t.trace[i] <= t.trace[i - 1] + 1e-12;
        }
        if (t.n == 2) {
            final_n2[t.ell] = t.trace.back();
        }
        if (t.n == 4) {
            final_n4[t.ell] = t.trace.back();
        }
        if (t.n == 4 && t.ell == 5) {
            unmerged = t.unmerged_log2;
            best = t.trace.back();
        }
    }
    bool ordered = true;
    for (size_t ell : {1, 2, 5}) {
        ordered &= final_n4[ell] <= final_n2[ell] + 1e-9;
    }
    bool halved = best <= unmerged / 2;
    std::string d = fmt("monotone=%.0f n4<=n2=%.0f; (n=4, l=5): %.3f -> %.3f; ", monotone, ordered, unmerged, best) +
                    fmt("finals n=2 (%.3f, %.3f, %.3f)", final_n2[1], final_n2[2], final_n2[5]) +
                    fmt(" n=4 (%.3f, %.3f, %.3f)", final_n4[1], final_n4[2], final_n4[5]);
    return {monotone && ordered && halved, d};
}

Outcome fig4() {
    ErrorHistParams p;
    p.seed = 4;
    std::vector<ErrorHistRow> rows = run_error_hist(p);
    std::vector<double> eu, em, eo;
    for (const auto &r : rows) {
        eu.push_back(r.err_unmerged);
        em.push_back(r.err_merged);
        eo.push_back(r.err_optimised);
    }
    auto med = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
    };
    double mu = med(eu), mm = med(em), mo = med(eo);

    // Hoeffding conformance on the merged+optimised version of the first ensemble member.
    std::mt19937_64 rng = make_rng(p.seed, 0);
    Circuit c = merge_circuit(gen_haar_circuit(p.wires, p.gates, rng), MergeConfig{p.n});
    OptConfig cfg;
    cfg.ell = p.ell;
    cfg.seed = 7;
    OptResult opt = optimise_frames(c, FrameAssignment::reference(Topology(c), p.family), cfg);
    const size_t reps = 200;
    double rate = hoeffding_violation_rate(c, opt.frames, 0.1, 0.1, reps, 44);
    double limit = 0.1 + 3 * std::sqrt(0.1 * 0.9 / reps);
    bool pass = mo < mm && mm < mu && rate <= limit;
    return {pass, fmt("median errors optimised %.2e < merged %.2e < unmerged %.2e; ", mo, mm, mu) +
                      fmt("Hoeffding violation rate %.3f <= %.3f", rate, limit)};
}

Outcome sample_formula() {
    uint64_t m = required_samples(0.01, 0.05, 1);
    bool scaling = true;
    for (double n : {1.0, 1.5, 2.0, 7.3, 64.0}) {
        scaling &= sample_bound(0.01, 0.05, 2 * n) == 4 * sample_bound(0.01, 0.05, n);
    }
    return {m == 73778 && scaling, "required_samples(0.01, 0.05, 1) = " + std::to_string(m) +
                                       (scaling ? ", doubling N_C quadruples the bound" : ", scaling broken")};
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"golden anchors", golden_anchors},
        {"frame duality", frame_duality},
        {"trajectory identity", trajectory_identity},
        {"gate merging subadditivity", merge_subadditivity},
        {"frame optimisation chain", middle_frame_chain},
        {"merging correctness", merging_correctness},
        {"Clifford+T block histogram", fig2},
        {"negativity reduction traces", fig3},
        {"estimation error ordering", fig4},
        {"sample-count formula", sample_formula},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
