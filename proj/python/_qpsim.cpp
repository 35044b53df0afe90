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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qpsim/experiments.hpp"
#include "qpsim/oracle.hpp"

namespace py = pybind11;
using namespace qpsim;

namespace {

FrameAssignment frames_for(const Circuit &c, const std::optional<std::string> &frames, const std::string &family) {
    Topology topo(c);
    FrameKind kind = parse_frame_kind(family);
    return frames ? parse_frame_assignment(*frames, topo, kind) : FrameAssignment::reference(topo, kind);
}

}  // namespace

PYBIND11_MODULE(_qpsim, m) {
    m.doc() = "Quasi-probability simulation of qubit circuits";
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("num_wires", [](const Circuit &c) { return c.num_wires; })
        .def_property_readonly("num_gates", [](const Circuit &c) { return c.gates.size(); })
        .def_property_readonly("supports", [](const Circuit &c) {
            std::vector<WireSupport> out;
            for (const auto &g : c.gates) {
                out.push_back(g.support);
            }
            return out;
        })
        .def("to_json", &serialize_circuit)
        .def_static("from_json", [](const std::string &text) { return parse_circuit(text); });

    m.def("gen_clifford_t", [](size_t wires, size_t cliffords, size_t t, uint64_t seed) {
        auto rng = make_rng(seed);
        return gen_clifford_t(wires, cliffords, t, rng);
    }, py::arg("wires"), py::arg("cliffords"), py::arg("t"), py::arg("seed"));
    m.def("gen_haar_circuit", [](size_t wires, size_t gates, uint64_t seed) {
        auto rng = make_rng(seed);
        return gen_haar_circuit(wires, gates, rng);
    }, py::arg("wires"), py::arg("gates"), py::arg("seed"));

    m.def("check_duality", [](const std::string &family, const std::vector<double> &params) {
        return check_duality(frame_from_params(parse_frame_kind(family), params));
    }, py::arg("family"), py::arg("params"));

    m.def("circuit_negativity", [](const Circuit &c, const std::string &family, std::optional<std::string> frames) {
        return circuit_negativity(c, frames_for(c, frames, family));
    }, py::arg("circuit"), py::arg("family") = "rotated_pauli", py::arg("frames") = py::none(),
       "Total log2 negativity.");
    m.def("negativity_report_json", [](const Circuit &c, const std::string &family, std::optional<std::string> frames) {
        return negativity_report_json(negativity_report(c, frames_for(c, frames, family)));
    }, py::arg("circuit"), py::arg("family") = "rotated_pauli", py::arg("frames") = py::none());

    m.def("merge_circuit", [](const Circuit &c, size_t n) { return merge_circuit(c, MergeConfig{n}); },
          py::arg("circuit"), py::arg("n"));

    m.def("optimise_frames", [](const Circuit &c, const std::string &family, size_t ell, size_t hops,
                                size_t local_iters, std::optional<size_t> cycles, uint64_t seed,
                                std::optional<std::string> frames) {
        OptConfig cfg;
        cfg.ell = ell;
        cfg.hops = hops;
        cfg.local_iters = local_iters;
        cfg.cycles = cycles;
        cfg.seed = seed;
        OptResult r;
        {
            py::gil_scoped_release release;
            r = optimise_frames(c, frames_for(c, frames, family), cfg);
        }
        return py::make_tuple(serialize_frame_assignment(r.frames), r.trace);
    }, py::arg("circuit"), py::arg("family") = "rotated_pauli", py::arg("ell") = 2, py::arg("hops") = 10,
       py::arg("local_iters") = 200, py::arg("cycles") = py::none(), py::kw_only(), py::arg("seed"),
       py::arg("frames") = py::none(),
       "Returns (frame assignment JSON, per-cycle log2 negativity trace).");

    m.def("estimate_json", [](const Circuit &c, uint64_t samples, uint64_t seed, const std::string &family,
                              std::optional<std::string> frames, size_t workers) {
        CompiledCircuit cc = compile(c, frames_for(c, frames, family));
        py::gil_scoped_release release;
        return estimate_report_json(estimate(cc, samples, seed, workers));
    }, py::arg("circuit"), py::arg("samples"), py::arg("seed"), py::arg("family") = "rotated_pauli",
       py::arg("frames") = py::none(), py::arg("workers") = 1);

    m.def("exact_probability", &exact_probability, py::arg("circuit"));
    m.def("required_samples", &required_samples, py::arg("epsilon"), py::arg("delta"), py::arg("n_c"));
    m.def("toffoli_anchor", [] {
        ToffoliAnchor a = toffoli_anchor();
        return py::dict(py::arg("toffoli") = a.toffoli, py::arg("t_fourth_power") = a.t_fourth_power);
    });
    m.def("run_experiment", &run_experiment, py::arg("spec"), py::arg("out_dir"));
    m.attr("__version__") = tool_version();
}
