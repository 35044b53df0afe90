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

#include "qpsim/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qpsim/oracle.hpp"

namespace qpsim {

using nlohmann::json;

namespace {

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    return make_rng(seed, stream)();
}

// Runs body(i) for i in [0, count) on up to `workers` threads. Results must be written by index.
void parallel_for(size_t count, size_t workers, const std::function<void(size_t)> &body) {
    workers = std::max<size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (size_t w = 0; w < workers; w++) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < count; i += workers) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

double median(std::vector<double> v) {
    if (v.empty()) {
        return 0;
    }
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string num(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

size_t default_workers() {
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::string tool_version() {
    return QPSIM_VERSION;
}

CliffordTBlockSummary run_clifford_t_blocks(const CliffordTBlockParams &p) {
    if (p.t == 0) {
        throw ValidationError("clifford_t_blocks: t must be positive");
    }
    CliffordTBlockSummary s;
    s.rows.resize(p.ensemble);
    parallel_for(p.ensemble, default_workers(), [&](size_t i) {
        std::mt19937_64 rng = make_rng(p.seed, i);
        Circuit c = gen_clifford_t(p.wires, p.cliffords, p.t, rng);
        Circuit merged = merge_circuit(c, MergeConfig{p.n});
        Topology topo(merged);
        double log2_n = circuit_negativity(merged, FrameAssignment::reference(topo, FrameKind::rotated_pauli));
        CliffordTBlockRow &row = s.rows[i];
        row.index = i;
        row.gates_after = merged.gates.size();
        row.log2_negativity = log2_n;
        row.log4_per_t = log2_n / 2.0 / static_cast<double>(p.t);
        row.log2_per_t = log2_n / static_cast<double>(p.t);
    });
    if (s.rows.empty()) {
        return s;
    }
    double m = static_cast<double>(s.rows.size());
    for (const auto &r : s.rows) {
        s.mean_log4_per_t += r.log4_per_t / m;
        s.mean_log2_per_t += r.log2_per_t / m;
        s.frac_log4_below += (r.log4_per_t < kRobustnessExponent) / m;
        s.frac_log4_above += (r.log4_per_t > kRobustnessExponent) / m;
        s.frac_log2_below += (r.log2_per_t < kRobustnessExponent) / m;
        s.frac_log2_above += (r.log2_per_t > kRobustnessExponent) / m;
    }
    double var = 0;
    for (const auto &r : s.rows) {
        var += (r.log4_per_t - s.mean_log4_per_t) * (r.log4_per_t - s.mean_log4_per_t);
    }
    s.std_log4_per_t = s.rows.size() > 1 ? std::sqrt(var / (m - 1)) : 0.0;
    return s;
}

std::vector<ReductionTrace> run_reduction(const ReductionParams &p) {
    std::mt19937_64 rng = make_rng(p.seed);
    Circuit c = gen_haar_circuit(p.wires, p.gates, rng);
    struct Job {
        FrameKind family;
        size_t n;
        size_t ell;
    };
    std::vector<Job> jobs;
    for (FrameKind f : p.families) {
        for (size_t n : p.ns) {
            for (size_t ell : p.ells) {
                jobs.push_back({f, n, ell});
            }
        }
    }
    std::vector<ReductionTrace> out(jobs.size());
    parallel_for(jobs.size(), default_workers(), [&](size_t j) {
        const Job &job = jobs[j];
        Topology topo(c);
        double unmerged = circuit_negativity(c, FrameAssignment::reference(topo, job.family));
        Circuit merged = merge_circuit(c, MergeConfig{job.n});
        Topology mtopo(merged);
        OptConfig cfg;
        cfg.ell = job.ell;
        cfg.hops = p.hops;
        cfg.local_iters = p.local_iters;
        cfg.seed = derive_seed(p.seed, 1 + j);
        OptResult res = optimise_frames(merged, FrameAssignment::reference(mtopo, job.family), cfg);
        out[j] = ReductionTrace{job.n, job.ell, job.family, unmerged, std::move(res.trace)};
    });
    return out;
}

std::vector<ErrorHistRow> run_error_hist(const ErrorHistParams &p) {
    std::vector<ErrorHistRow> rows(p.circuits);
    // Ensemble members run one after another; each estimate uses p.workers threads.
    for (size_t i = 0; i < p.circuits; i++) {
        std::mt19937_64 rng = make_rng(p.seed, i);
        Circuit c = gen_haar_circuit(p.wires, p.gates, rng);
        ErrorHistRow &row = rows[i];
        row.index = i;
        row.p_exact = exact_probability(c);

        auto run = [&](const Circuit &circ, const FrameAssignment &fa, uint64_t stream, double &log2_n) {
            CompiledCircuit cc = compile(circ, fa);
            log2_n = cc.n_c_log2;
            EstimateReport rep = estimate(cc, p.samples, derive_seed(p.seed, 3 * (i + 1) + stream), p.workers);
            return std::abs(rep.p_est - row.p_exact);
        };

        row.err_unmerged = run(c, FrameAssignment::reference(Topology(c), p.family), 0, row.log2_unmerged);
        Circuit merged = merge_circuit(c, MergeConfig{p.n});
        FrameAssignment ref = FrameAssignment::reference(Topology(merged), p.family);
        row.err_merged = run(merged, ref, 1, row.log2_merged);
        OptConfig cfg;
        cfg.ell = p.ell;
        cfg.hops = p.hops;
        cfg.local_iters = p.local_iters;
        cfg.seed = derive_seed(p.seed, 1000003 + i);
        OptResult opt = optimise_frames(merged, ref, cfg);
        row.err_optimised = run(merged, opt.frames, 2, row.log2_optimised);
    }
    return rows;
}

double hoeffding_violation_rate(
    const Circuit &c, const FrameAssignment &fa, double epsilon, double delta, size_t repetitions, uint64_t seed) {
    if (repetitions == 0) {
        throw ValidationError("hoeffding_violation_rate: need at least one repetition");
    }
    CompiledCircuit cc = compile(c, fa);
    uint64_t m = required_samples(epsilon, delta, std::max(1.0, std::exp2(cc.n_c_log2)));
    double p = exact_probability(c);
    size_t violations = 0;
    for (size_t r = 0; r < repetitions; r++) {
        EstimateReport rep = estimate(cc, m, derive_seed(seed, r));
        violations += std::abs(rep.p_est - p) > epsilon;
    }
    return static_cast<double>(violations) / static_cast<double>(repetitions);
}

ToffoliAnchor toffoli_anchor() {
    FramePair ref = reference_frame(FrameKind::rotated_pauli);
    std::vector<const FramePair *> three{&ref, &ref, &ref};
    std::vector<const FramePair *> one{&ref};
    ToffoliAnchor a;
    a.toffoli = gate_tensor(library_gate("CCX", {0, 1, 2}), three, three).negativity;
    double t = gate_tensor(library_gate("T", {0}), one, one).negativity;
    a.t_fourth_power = t * t * t * t;
    return a;
}

PipelineResult run_pipeline(const Circuit &c, const PipelineParams &p) {
    validate_circuit(c);
    PipelineResult res;
    res.log2_initial = circuit_negativity(c, FrameAssignment::reference(Topology(c), p.family));
    res.merged = merge_circuit(c, MergeConfig{p.n});
    OptConfig cfg;
    cfg.ell = p.ell;
    cfg.hops = p.hops;
    cfg.local_iters = p.local_iters;
    cfg.seed = p.seed;
    res.optimised = optimise_frames(res.merged, FrameAssignment::reference(Topology(res.merged), p.family), cfg);
    CompiledCircuit cc = compile(res.merged, res.optimised.frames);
    double n_c = std::max(1.0, std::exp2(cc.n_c_log2));
    double bound = sample_bound(p.epsilon, p.delta, n_c);
    if (bound > static_cast<double>(p.max_samples)) {
        throw ValidationError(
            "pipeline: " + num(std::ceil(bound)) + " samples needed (log2 N_C = " + num(cc.n_c_log2) +
            "), above the limit of " + std::to_string(p.max_samples));
    }
    uint64_t m = required_samples(p.epsilon, p.delta, n_c);
    res.report = estimate(cc, m, derive_seed(p.seed, 1), p.workers);
    return res;
}

// ---------------------------------------------------------------------------------------------
// Experiment documents.

namespace {

struct Knobs {
    const json &obj;
    std::set<std::string> used;

    const json *find(const std::string &key) {
        used.insert(key);
        auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    size_t count(const std::string &key, size_t def) {
        const json *v = find(key);
        if (!v) {
            return def;
        }
        if (!v->is_number_integer() || v->get<int64_t>() <= 0) {
            throw ValidationError("parameters." + key + ": expected a positive integer");
        }
        return v->get<size_t>();
    }

    std::vector<size_t> counts(const std::string &key, std::vector<size_t> def) {
        const json *v = find(key);
        if (!v) {
            return def;
        }
        if (!v->is_array()) {
            std::vector<size_t> one{count(key, 1)};
            return one;
        }
        std::vector<size_t> out;
        for (size_t i = 0; i < v->size(); i++) {
            const json &e = (*v)[i];
            if (!e.is_number_integer() || e.get<int64_t>() <= 0) {
                throw ValidationError("parameters." + key + "[" + std::to_string(i) + "]: expected a positive integer");
            }
            out.push_back(e.get<size_t>());
        }
        if (out.empty()) {
            throw ValidationError("parameters." + key + ": must not be empty");
        }
        return out;
    }

    std::vector<FrameKind> families(const std::string &key, std::vector<FrameKind> def) {
        const json *v = find(key);
        if (!v) {
            return def;
        }
        std::vector<FrameKind> out;
        auto one = [&](const json &e) {
            if (!e.is_string()) {
                throw ValidationError("parameters." + key + ": expected frame family names");
            }
            out.push_back(parse_frame_kind(e.get<std::string>()));
        };
        if (v->is_array()) {
            for (const auto &e : *v) {
                one(e);
            }
        } else {
            one(*v);
        }
        if (out.empty()) {
            throw ValidationError("parameters." + key + ": must not be empty");
        }
        return out;
    }

    uint64_t seed() {
        const json *v = find("seed");
        if (!v) {
            throw ValidationError("parameters.seed: required");
        }
        if (!v->is_number_unsigned()) {
            throw ValidationError("parameters.seed: expected a non-negative integer");
        }
        return v->get<uint64_t>();
    }

    void finish() const {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!used.count(it.key())) {
                throw ValidationError("parameters." + it.key() + ": unknown parameter");
            }
        }
    }
};

class ArtifactWriter {
   public:
    ArtifactWriter(std::filesystem::path dir, json meta) : dir_(std::move(dir)), meta_(std::move(meta)) {
        std::filesystem::create_directories(dir_);
    }

    void csv(const std::string &name, const std::string &header, const std::vector<std::string> &lines) {
        std::string text = "# " + meta_.dump() + "\n" + header + "\n";
        for (const auto &l : lines) {
            text += l + "\n";
        }
        write(name, text);
    }

    void json_doc(const std::string &name, json body) {
        body["meta"] = meta_;
        write(name, body.dump(2) + "\n");
    }

    const std::vector<std::filesystem::path> &written() const {
        return written_;
    }

   private:
    void write(const std::string &name, const std::string &text) {
        std::filesystem::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << text;
        written_.push_back(path);
    }

    std::filesystem::path dir_;
    json meta_;
    std::vector<std::filesystem::path> written_;
};

void write_fig2(Knobs &k, ArtifactWriter &w) {
    CliffordTBlockParams p;
    p.ensemble = k.count("ensemble", 100);
    p.wires = k.count("wires", 5);
    p.cliffords = k.count("cliffords", 100);
    std::vector<size_t> ts = k.counts("t", {15});
    p.n = k.count("n", 5);
    p.seed = k.seed();
    k.finish();
    std::vector<std::string> lines;
    json summary = json::array();
    for (size_t ti = 0; ti < ts.size(); ti++) {
        p.t = ts[ti];
        CliffordTBlockParams q = p;
        q.seed = derive_seed(p.seed, ti);
        CliffordTBlockSummary s = run_clifford_t_blocks(q);
        for (const auto &r : s.rows) {
            lines.push_back(
                std::to_string(p.t) + "," + std::to_string(r.index) + "," + std::to_string(r.gates_after) + "," +
                num(r.log2_negativity) + "," + num(r.log4_per_t) + "," + num(r.log2_per_t));
        }
        summary.push_back({
            {"t", p.t},
            {"mean_log4_per_t", s.mean_log4_per_t},
            {"std_log4_per_t", s.std_log4_per_t},
            {"fraction_log4_below_0.272", s.frac_log4_below},
            {"fraction_log4_above_0.272", s.frac_log4_above},
            {"mean_log2_per_t", s.mean_log2_per_t},
            {"fraction_log2_below_0.272", s.frac_log2_below},
            {"fraction_log2_above_0.272", s.frac_log2_above},
        });
    }
    w.csv("fig2_blocks.csv", "t,index,gates_after,log2_negativity,log4_per_t,log2_per_t", lines);
    w.json_doc("fig2_summary.json", {{"summary", summary}});
}

void write_fig3(Knobs &k, ArtifactWriter &w) {
    ReductionParams p;
    p.wires = k.count("wires", 6);
    p.gates = k.count("gates", 15);
    p.ns = k.counts("n", p.ns);
    p.ells = k.counts("ell", p.ells);
    p.families = k.families("families", p.families);
    p.hops = k.count("hops", 10);
    p.local_iters = k.count("local_iters", 200);
    p.seed = k.seed();
    k.finish();
    std::vector<ReductionTrace> traces = run_reduction(p);
    std::vector<std::string> lines;
    json summary = json::array();
    for (const auto &t : traces) {
        std::string prefix =
            std::string(frame_kind_name(t.family)) + "," + std::to_string(t.n) + "," + std::to_string(t.ell) + ",";
        for (size_t cyc = 0; cyc < t.trace.size(); cyc++) {
            lines.push_back(prefix + std::to_string(cyc) + "," + num(t.trace[cyc]));
        }
        summary.push_back({
            {"family", frame_kind_name(t.family)},
            {"n", t.n},
            {"ell", t.ell},
            {"unmerged_log2_negativity", t.unmerged_log2},
            {"merged_log2_negativity", t.trace.front()},
            {"final_log2_negativity", t.trace.back()},
        });
    }
    w.csv("fig3_traces.csv", "family,n,ell,cycle,log2_negativity", lines);
    w.json_doc("fig3_summary.json", {{"summary", summary}});
}

void write_fig4(Knobs &k, ArtifactWriter &w) {
    ErrorHistParams p;
    p.circuits = k.count("circuits", 30);
    p.wires = k.count("wires", 3);
    p.gates = k.count("gates", 8);
    p.n = k.count("n", 3);
    p.ell = k.count("ell", 1);
    p.samples = k.count("samples", 1000000);
    p.family = k.families("family", {FrameKind::wigner}).front();
    p.hops = k.count("hops", 10);
    p.local_iters = k.count("local_iters", 200);
    p.workers = k.count("workers", 1);
    p.seed = k.seed();
    k.finish();
    std::vector<ErrorHistRow> rows = run_error_hist(p);
    std::vector<std::string> lines;
    std::vector<double> eu, em, eo;
    for (const auto &r : rows) {
        lines.push_back(
            std::to_string(r.index) + "," + num(r.p_exact) + "," + num(r.err_unmerged) + "," + num(r.err_merged) +
            "," + num(r.err_optimised) + "," + num(r.log2_unmerged) + "," + num(r.log2_merged) + "," +
            num(r.log2_optimised));
        eu.push_back(r.err_unmerged);
        em.push_back(r.err_merged);
        eo.push_back(r.err_optimised);
    }
    w.csv(
        "fig4_errors.csv",
        "index,p_exact,err_unmerged,err_merged,err_optimised,log2_unmerged,log2_merged,log2_optimised", lines);
    w.json_doc(
        "fig4_summary.json",
        {{"median_err_unmerged", median(eu)}, {"median_err_merged", median(em)}, {"median_err_optimised", median(eo)}});
}

void write_toffoli(Knobs &k, ArtifactWriter &w) {
    k.seed();
    k.finish();
    ToffoliAnchor a = toffoli_anchor();
    w.json_doc("toffoli_anchor.json", {{"toffoli", a.toffoli}, {"t_fourth_power", a.t_fourth_power}});
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

}  // namespace

std::vector<std::filesystem::path> run_experiment(const std::string &spec_text, const std::filesystem::path &out_dir) {
    json spec;
    try {
        spec = json::parse(spec_text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("experiment: invalid JSON: ") + e.what());
    }
    if (!spec.is_object() || !spec.contains("name") || !spec["name"].is_string()) {
        throw ValidationError("name: required string");
    }
    for (auto it = spec.begin(); it != spec.end(); ++it) {
        if (it.key() != "name" && it.key() != "parameters") {
            throw ValidationError(it.key() + ": unknown field");
        }
    }
    json params = spec.value("parameters", json::object());
    if (!params.is_object()) {
        throw ValidationError("parameters: expected an object");
    }
    std::string name = spec["name"];
    std::function<void(Knobs &, ArtifactWriter &)> runner;
    if (name == "fig2_histogram") {
        runner = write_fig2;
    } else if (name == "fig3_reduction") {
        runner = write_fig3;
    } else if (name == "fig4_error_hist") {
        runner = write_fig4;
    } else if (name == "toffoli_anchor") {
        runner = write_toffoli;
    } else {
        throw ValidationError("name: unknown experiment '" + name + "'");
    }
    json meta{{"spec", spec}, {"seed", params.value("seed", json())}, {"version", tool_version()}};
    auto start = std::chrono::steady_clock::now();
    std::string started = utc_now();
    Knobs knobs{params, {}};
    ArtifactWriter writer(out_dir, meta);
    runner(knobs, writer);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::vector<std::filesystem::path> written = writer.written();
    std::ofstream log(out_dir / "run.log", std::ios::app);
    log << started << " " << name << " elapsed_seconds=" << num(elapsed) << " version=" << tool_version() << "\n";
    written.push_back(out_dir / "run.log");
    return written;
}

}  // namespace qpsim
