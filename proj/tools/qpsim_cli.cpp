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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpsim/experiments.hpp"
#include "qpsim/oracle.hpp"

namespace fs = std::filesystem;
using namespace qpsim;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes to path, or to stdout when the path is empty or "-".
void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    if (fs::path(path).has_parent_path()) {
        fs::create_directories(fs::path(path).parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
}

FrameAssignment load_frames(const std::string &path, const Circuit &c, FrameKind kind) {
    Topology topo(c);
    if (path.empty()) {
        return FrameAssignment::reference(topo, kind);
    }
    return parse_frame_assignment(read_file(path), topo, kind);
}

std::string trace_csv(const std::vector<double> &trace) {
    std::ostringstream out;
    out.precision(17);
    out << "cycle,log2_negativity\n";
    for (size_t i = 0; i < trace.size(); i++) {
        out << i << "," << trace[i] << "\n";
    }
    return out.str();
}

struct Common {
    std::string circuit;
    std::string frames;
    std::string family = "rotated_pauli";
    std::string out;
};

void add_circuit(CLI::App *cmd, Common &o) {
    cmd->add_option("--circuit", o.circuit, "Circuit JSON")->required()->check(CLI::ExistingFile);
}

void add_family(CLI::App *cmd, Common &o) {
    cmd->add_option("--family", o.family, "Frame family for unspecified segments")
        ->check(CLI::IsMember({"wigner", "rotated_pauli"}));
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quasi-probability circuit simulation with gate merging and frame optimisation"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    // gen
    struct {
        std::string kind = "clifford_t";
        size_t wires = 5, cliffords = 100, t = 15, gates = 15;
        uint64_t seed = 0;
        std::string out;
    } gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a seeded random circuit");
    gen_cmd->add_option("--kind", gen.kind)->check(CLI::IsMember({"clifford_t", "haar"}));
    gen_cmd->add_option("--wires", gen.wires)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--cliffords", gen.cliffords);
    gen_cmd->add_option("--t", gen.t);
    gen_cmd->add_option("--gates", gen.gates)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed)->required();
    gen_cmd->add_option("-o,--out", gen.out);

    // negativity
    Common neg;
    auto *neg_cmd = app.add_subcommand("negativity", "Per-component and total log2 negativity");
    add_circuit(neg_cmd, neg);
    neg_cmd->add_option("--frames", neg.frames)->check(CLI::ExistingFile);
    add_family(neg_cmd, neg);
    neg_cmd->add_option("-o,--out", neg.out);

    // merge
    Common mrg;
    size_t merge_n = 3;
    std::string merge_report;
    auto *merge_cmd = app.add_subcommand("merge", "Greedy gate merging up to n wires");
    add_circuit(merge_cmd, mrg);
    add_family(merge_cmd, mrg);
    merge_cmd->add_option("--n", merge_n)->check(CLI::PositiveNumber);
    merge_cmd->add_option("-o,--out", mrg.out, "Merged circuit JSON")->required();
    merge_cmd->add_option("--report", merge_report, "Report JSON (stdout by default)");

    // optimize
    Common opt;
    OptConfig opt_cfg;
    size_t opt_cycles = 0;
    std::string opt_trace;
    auto *opt_cmd = app.add_subcommand("optimize", "Dynamic frame optimisation");
    add_circuit(opt_cmd, opt);
    opt_cmd->add_option("--frames", opt.frames)->check(CLI::ExistingFile);
    add_family(opt_cmd, opt);
    opt_cmd->add_option("--ell", opt_cfg.ell)->check(CLI::PositiveNumber);
    opt_cmd->add_option("--cycles", opt_cycles)->check(CLI::PositiveNumber);
    opt_cmd->add_option("--hops", opt_cfg.hops);
    opt_cmd->add_option("--local-iters", opt_cfg.local_iters)->check(CLI::PositiveNumber);
    opt_cmd->add_option("--seed", opt_cfg.seed)->required();
    opt_cmd->add_option("-o,--out", opt.out, "Optimised frame assignment JSON")->required();
    opt_cmd->add_option("--trace", opt_trace, "Per-cycle negativity CSV")->required();

    // estimate
    Common est;
    uint64_t est_samples = 0, est_seed = 0;
    double est_eps = 0, est_delta = 0;
    size_t est_workers = 1;
    auto *est_cmd = app.add_subcommand("estimate", "Signed Monte Carlo estimate of the outcome probability");
    add_circuit(est_cmd, est);
    est_cmd->add_option("--frames", est.frames)->check(CLI::ExistingFile);
    add_family(est_cmd, est);
    auto *samples_opt = est_cmd->add_option("--samples", est_samples)->check(CLI::PositiveNumber);
    auto *eps_opt = est_cmd->add_option("--epsilon", est_eps)->check(CLI::PositiveNumber);
    auto *delta_opt = est_cmd->add_option("--delta", est_delta)->check(CLI::Range(0.0, 1.0));
    samples_opt->excludes(eps_opt)->excludes(delta_opt);
    eps_opt->needs(delta_opt);
    delta_opt->needs(eps_opt);
    est_cmd->add_option("--seed", est_seed)->required();
    est_cmd->add_option("--workers", est_workers)->check(CLI::PositiveNumber);
    est_cmd->add_option("--json-out", est.out);

    // oracle
    Common orc;
    auto *orc_cmd = app.add_subcommand("oracle", "Exact outcome probability");
    add_circuit(orc_cmd, orc);
    orc_cmd->add_option("-o,--out", orc.out);

    // pipeline
    Common pipe;
    PipelineParams pp;
    std::string pipe_dir;
    auto *pipe_cmd = app.add_subcommand("pipeline", "Merge, optimise frames and estimate");
    add_circuit(pipe_cmd, pipe);
    add_family(pipe_cmd, pipe);
    pipe_cmd->add_option("--n", pp.n)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--ell", pp.ell)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--epsilon", pp.epsilon)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--delta", pp.delta)->check(CLI::Range(0.0, 1.0));
    pipe_cmd->add_option("--hops", pp.hops);
    pipe_cmd->add_option("--local-iters", pp.local_iters)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--workers", pp.workers)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--max-samples", pp.max_samples)->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--seed", pp.seed)->required();
    pipe_cmd->add_option("--out-dir", pipe_dir, "Directory for intermediate artifacts")->required();

    // run
    std::string run_spec, run_dir = ".";
    auto *run_cmd = app.add_subcommand("run", "Run an experiment document");
    run_cmd->add_option("spec", run_spec, "Experiment JSON")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--out-dir", run_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen_cmd) {
            auto rng = make_rng(gen.seed);
            Circuit c = gen.kind == "haar" ? gen_haar_circuit(gen.wires, gen.gates, rng)
                                           : gen_clifford_t(gen.wires, gen.cliffords, gen.t, rng);
            emit(gen.out, serialize_circuit(c));
        } else if (*neg_cmd) {
            Circuit c = parse_circuit(read_file(neg.circuit));
            FrameAssignment fa = load_frames(neg.frames, c, parse_frame_kind(neg.family));
            emit(neg.out, negativity_report_json(negativity_report(c, fa)));
        } else if (*merge_cmd) {
            Circuit c = parse_circuit(read_file(mrg.circuit));
            Circuit merged = merge_circuit(c, MergeConfig{merge_n});
            FrameKind kind = parse_frame_kind(mrg.family);
            nlohmann::json report{
                {"gates_before", c.gates.size()},
                {"gates_after", merged.gates.size()},
                {"log2_negativity_before", circuit_negativity(c, FrameAssignment::reference(Topology(c), kind))},
                {"log2_negativity_after",
                 circuit_negativity(merged, FrameAssignment::reference(Topology(merged), kind))},
            };
            emit(mrg.out, serialize_circuit(merged));
            emit(merge_report, report.dump(2) + "\n");
        } else if (*opt_cmd) {
            Circuit c = parse_circuit(read_file(opt.circuit));
            FrameAssignment fa = load_frames(opt.frames, c, parse_frame_kind(opt.family));
            if (opt_cycles > 0) {
                opt_cfg.cycles = opt_cycles;
            }
            OptResult res = optimise_frames(c, fa, opt_cfg);
            emit(opt.out, serialize_frame_assignment(res.frames));
            emit(opt_trace, trace_csv(res.trace));
        } else if (*est_cmd) {
            if (samples_opt->count() == 0 && eps_opt->count() == 0) {
                throw ValidationError("estimate: give --samples or --epsilon with --delta");
            }
            Circuit c = parse_circuit(read_file(est.circuit));
            FrameAssignment fa = load_frames(est.frames, c, parse_frame_kind(est.family));
            CompiledCircuit cc = compile(c, fa);
            uint64_t m = est_samples;
            if (m == 0) {
                m = required_samples(est_eps, est_delta, std::max(1.0, std::exp2(cc.n_c_log2)));
            }
            emit(est.out, estimate_report_json(estimate(cc, m, est_seed, est_workers)));
        } else if (*orc_cmd) {
            Circuit c = parse_circuit(read_file(orc.circuit));
            emit(orc.out, nlohmann::json{{"p_exact", exact_probability(c)}}.dump(2) + "\n");
        } else if (*pipe_cmd) {
            Circuit c = parse_circuit(read_file(pipe.circuit));
            pp.family = parse_frame_kind(pipe.family);
            PipelineResult r = run_pipeline(c, pp);
            fs::path dir(pipe_dir);
            emit((dir / "merged_circuit.json").string(), serialize_circuit(r.merged));
            emit((dir / "frames.json").string(), serialize_frame_assignment(r.optimised.frames));
            emit((dir / "trace.csv").string(), trace_csv(r.optimised.trace));
            std::string report = estimate_report_json(r.report);
            emit((dir / "report.json").string(), report);
            nlohmann::json manifest{
                {"meta",
                 {{"circuit", fs::absolute(pipe.circuit).string()},
                  {"family", pipe.family},
                  {"n", pp.n},
                  {"ell", pp.ell},
                  {"epsilon", pp.epsilon},
                  {"delta", pp.delta},
                  {"hops", pp.hops},
                  {"local_iters", pp.local_iters},
                  {"seed", pp.seed},
                  {"version", tool_version()}}},
                {"log2_negativity_initial", r.log2_initial},
                {"log2_negativity_merged", r.optimised.trace.front()},
                {"log2_negativity_optimised", r.optimised.trace.back()},
                {"report", nlohmann::json::parse(report)},
            };
            emit((dir / "pipeline.json").string(), manifest.dump(2) + "\n");
            std::cout << report;
        } else if (*run_cmd) {
            for (const auto &p : run_experiment(read_file(run_spec), run_dir)) {
                std::cout << p.string() << "\n";
            }
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
