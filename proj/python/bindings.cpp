// Copyright 2026 The LOTUS-QAOA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lotus/checks.hpp"
#include "lotus/engine.hpp"
#include "lotus/qaoa.hpp"
#include "lotus/score.hpp"
#include "lotus/stats.hpp"
#include "lotus/sweep.hpp"
#include "lotus/transfer.hpp"

namespace py = pybind11;
using namespace lotus;

namespace {

// Records and configs cross the boundary as plain dicts via their JSON form.
py::object to_py(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_py(const py::object &o) {
    return nlohmann::json::parse(
        py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

RunSettings make_settings(const std::string &method, int shots, int budget, std::uint64_t seed) {
    RunSettings s;
    s.method = method;
    s.shots = shots;
    s.budget = budget;
    s.seed = seed;
    return s;
}

} // namespace

PYBIND11_MODULE(_lotus, m) {
    m.doc() = "LOTUS-QAOA: statevector QAOA with HFA schedules and a benchmark harness";

    // ------------------------------------------------------------ instances
    py::class_<WeightedGraph>(m, "Graph")
        .def(py::init([](int n, const std::vector<std::tuple<int, int, double>> &edges) {
                 WeightedGraph g;
                 g.n = n;
                 for (const auto &[u, v, w] : edges) {
                     g.edges.push_back({u, v, w});
                 }
                 g.validate(false);
                 return g;
             }),
             py::arg("n"), py::arg("edges"))
        .def_readonly("n", &WeightedGraph::n)
        .def_property_readonly("edges",
                               [](const WeightedGraph &g) {
                                   std::vector<std::tuple<int, int, double>> out;
                                   for (const auto &e : g.edges) {
                                       out.emplace_back(e.i, e.j, e.w);
                                   }
                                   return out;
                               })
        .def("total_weight", &WeightedGraph::total_weight)
        .def("is_connected", &WeightedGraph::is_connected)
        .def("cut_value", py::overload_cast<const WeightedGraph &, const std::string &>(&cut_value),
             py::arg("bitstring"))
        .def("to_dict", [](const WeightedGraph &g) { return to_py(to_json(g)); })
        .def_static("from_dict", [](const py::object &o) { return graph_from_json(from_py(o)); })
        .def("__repr__", [](const WeightedGraph &g) {
            return "<Graph n=" + std::to_string(g.n) + " edges=" + std::to_string(g.edges.size()) +
                   ">";
        });

    py::class_<CutResult>(m, "CutResult")
        .def_readonly("n", &CutResult::n)
        .def_readonly("bits", &CutResult::bits)
        .def_readonly("cut_value", &CutResult::cut_value)
        .def("bitstring", &CutResult::bitstring);

    m.def("gen_erdos_renyi", &gen_erdos_renyi, py::arg("n"), py::arg("p_graph"), py::arg("seed"));
    m.def("brute_force_maxcut", &brute_force_maxcut, py::arg("graph"));

    // ------------------------------------------------------------ schedules
    py::class_<HfaParams>(m, "HfaParams")
        .def_static("zeros", &HfaParams::zeros, py::arg("modes"))
        .def_static("from_flat", [](const std::vector<double> &v) { return HfaParams::from_flat(v); })
        .def("flatten", &HfaParams::flatten)
        .def_property_readonly("modes", &HfaParams::modes)
        .def_readwrite("a", &HfaParams::a)
        .def_readwrite("b", &HfaParams::b)
        .def_readwrite("lambda_gamma", &HfaParams::lambda_gamma)
        .def_readwrite("lambda_beta", &HfaParams::lambda_beta)
        .def_readwrite("delta_gamma0", &HfaParams::delta_gamma0)
        .def_readwrite("delta_beta0", &HfaParams::delta_beta0)
        .def_readwrite("weights", &HfaParams::weights)
        .def("__eq__", [](const HfaParams &a, const HfaParams &b) { return a == b; });

    py::class_<Schedule>(m, "Schedule")
        .def_readonly("grid", &Schedule::grid)
        .def_readonly("gammas", &Schedule::gammas)
        .def_readonly("betas", &Schedule::betas)
        .def_readonly("raw_gammas", &Schedule::raw_gammas)
        .def_readonly("raw_betas", &Schedule::raw_betas)
        .def_property_readonly("depth", &Schedule::depth);

    py::class_<LipschitzReport>(m, "LipschitzReport")
        .def_readonly("c_spec_gamma", &LipschitzReport::c_spec_gamma)
        .def_readonly("c_spec_beta", &LipschitzReport::c_spec_beta)
        .def_readonly("c_ar_gamma", &LipschitzReport::c_ar_gamma)
        .def_readonly("c_ar_beta", &LipschitzReport::c_ar_beta)
        .def_readonly("max_violation", &LipschitzReport::max_violation)
        .def_readonly("worst_layer", &LipschitzReport::worst_layer)
        .def("holds", &LipschitzReport::holds, py::arg("tol") = 1e-12);

    m.def("hfa_dimension", &hfa_dimension, py::arg("modes"));
    m.def("hfa_generate", &hfa_generate, py::arg("params"), py::arg("p"));
    m.def("standard_unpack", [](const std::vector<double> &v) { return standard_unpack(v); });
    m.def("standard_pack", &standard_pack);
    m.def(
        "resample",
        [](const HfaParams &params, int p_new, std::optional<int> ar_rescale_from) {
            ResampleOptions o;
            o.ar_rescale_from = ar_rescale_from;
            return resample(params, p_new, o);
        },
        py::arg("params"), py::arg("p_new"), py::arg("ar_rescale_from") = py::none());
    m.def("lipschitz_certificate", &lipschitz_certificate, py::arg("params"), py::arg("p"));
    m.def("max_layer_gap", &max_layer_gap);

    // ------------------------------------------------------------ engine
    m.def(
        "expectation",
        [](const WeightedGraph &g, const Schedule &sched, int shots, std::uint64_t seed) {
            QaoaSimulator sim(g);
            return sim.expectation(sched, shots, seed);
        },
        py::arg("graph"), py::arg("schedule"), py::arg("shots") = 0, py::arg("seed") = 0,
        "Exact expectation when shots == 0, otherwise a shot-sampled estimate.");
    m.def(
        "probabilities",
        [](const WeightedGraph &g, const Schedule &sched) {
            const auto s = evolve(g, sched);
            std::vector<double> out(s.dimension());
            for (std::size_t z = 0; z < out.size(); ++z) {
                out[z] = s.probability(z);
            }
            return out;
        },
        py::arg("graph"), py::arg("schedule"));

    // ------------------------------------------------------------ optimizers
    m.def("optimizer_ids", &optimizer_ids);
    m.def(
        "minimize",
        [](const std::string &method, const std::function<double(std::vector<double>)> &fn,
           const std::vector<double> &x0, int budget, double tol) {
            Objective obj(static_cast<int>(x0.size()), [&](std::span<const double> x) {
                return fn(std::vector<double>(x.begin(), x.end()));
            });
            MinimizeOptions o;
            o.budget = budget;
            o.tol = tol;
            const auto r = minimize(method, obj, x0, o);
            py::dict out;
            out["x_best"] = r.x_best;
            out["f_best"] = r.f_best;
            out["iterations"] = r.iterations;
            out["evaluations"] = r.evaluations;
            out["converged"] = r.converged;
            out["trace"] = r.trace;
            return out;
        },
        py::arg("method"), py::arg("fn"), py::arg("x0"), py::arg("budget") = 2000,
        py::arg("tol") = 1e-6);
    m.def(
        "lotus_optimize",
        [](const WeightedGraph &g, int p, int modes, const std::string &method, int shots,
           int budget, std::uint64_t seed, int n_restarts) {
            LotusInitConfig init;
            init.n_restarts = n_restarts;
            const auto r = lotus_optimize(g, p, modes, init, make_settings(method, shots, budget, seed));
            return py::make_tuple(r.params, r.schedule, to_py(to_json(r.record)));
        },
        py::arg("graph"), py::arg("p"), py::arg("modes") = 2, py::arg("method") = "nelder-mead",
        py::arg("shots") = kTrainingShots, py::arg("budget") = 2000, py::arg("seed") = 0,
        py::arg("n_restarts") = 5, "Returns (HfaParams, Schedule, record dict).");
    m.def(
        "baseline_optimize",
        [](const WeightedGraph &g, int p, const std::string &method, int shots, int budget,
           std::uint64_t seed) {
            const auto r = baseline_optimize(g, p, make_settings(method, shots, budget, seed));
            return py::make_tuple(r.schedule, to_py(to_json(r.record)));
        },
        py::arg("graph"), py::arg("p"), py::arg("method") = "powell",
        py::arg("shots") = kTrainingShots, py::arg("budget") = 2000, py::arg("seed") = 0,
        "Returns (Schedule, record dict).");

    // ------------------------------------------------------------ harness
    m.def(
        "run_sweep",
        [](const py::object &config, int workers, bool write_files) {
            const auto cfg = sweep_config_from_json(config.is_none() ? nlohmann::json::object()
                                                                      : from_py(config));
            SweepOptions o;
            o.workers = workers;
            o.write_files = write_files;
            std::vector<RunRecord> recs;
            {
                py::gil_scoped_release release;
                recs = run_sweep(cfg, o);
            }
            py::list out;
            for (const auto &r : recs) {
                out.append(to_py(to_json(r)));
            }
            return out;
        },
        py::arg("config") = py::none(), py::arg("workers") = 1, py::arg("write_files") = false,
        "Runs a sweep described by a dict with SweepConfig field names.");
    m.def(
        "load_records",
        [](const std::string &path) {
            py::list out;
            for (const auto &r : load_records(path)) {
                out.append(to_py(to_json(r)));
            }
            return out;
        },
        py::arg("path"));
    m.def(
        "score_records",
        [](const py::list &records, double alpha) {
            std::vector<RunRecord> recs;
            for (const auto &r : records) {
                recs.push_back(run_record_from_json(from_py(py::reinterpret_borrow<py::object>(r))));
            }
            py::list out;
            for (const auto &s : score_records(recs, alpha)) {
                py::dict d;
                d["e_norm"] = s.e_norm;
                d["i_norm"] = s.i_norm;
                d["score"] = s.score;
                d["alpha"] = s.alpha;
                out.append(d);
            }
            return out;
        },
        py::arg("records"), py::arg("alpha") = kDefaultScoreAlpha);
    m.def(
        "wilcoxon_signed_rank",
        [](const std::vector<double> &x, const std::vector<double> &y) {
            const auto r = wilcoxon_signed_rank(x, y);
            py::dict d;
            d["n_used"] = r.n_used;
            d["w_plus"] = r.w_plus;
            d["p_value"] = r.p_value;
            d["exact"] = r.exact;
            return d;
        },
        py::arg("x"), py::arg("y"));
    m.def(
        "depth_transfer",
        [](const WeightedGraph &g, const HfaParams &params, int p_source,
           const std::vector<int> &depths) {
            const auto t = depth_transfer_experiment(g, params, p_source, depths);
            py::dict d;
            d["source_expectation"] = t.source_expectation;
            std::vector<double> e;
            for (const auto &row : t.rows) {
                e.push_back(row.expectation);
            }
            d["expectations"] = e;
            d["successive_gaps"] = t.successive_gaps;
            return d;
        },
        py::arg("graph"), py::arg("params"), py::arg("p_source"), py::arg("depths"));
    m.def("invariant_suite", [] {
        py::list out;
        for (const auto &r : invariant_suite()) {
            out.append(py::make_tuple(r.name, r.passed, r.detail));
        }
        return out;
    });
}
