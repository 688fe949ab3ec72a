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
// Command-line front end: instance generation, sweeps, scoring, reports,
// depth transfer and the invariant suite.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "lotus/checks.hpp"
#include "lotus/score.hpp"
#include "lotus/stats.hpp"
#include "lotus/sweep.hpp"
#include "lotus/transfer.hpp"

namespace fs = std::filesystem;
using namespace lotus;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

/// Bad user input detected after parsing (missing files, invalid configs).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<RunRecord> read_results(const fs::path &path) {
    if (!fs::exists(path)) {
        throw UsageError("result file not found: " + path.string());
    }
    auto recs = load_records(path);
    if (recs.empty()) {
        throw UsageError("no records in " + path.string());
    }
    return recs;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    int nodes = 8;
    double density = 0.75;
    std::uint64_t seed = 0;
    int count = 1;
    std::string out;
};

int cmd_gen(const GenArgs &a) {
    if (a.count == 1 && fs::path(a.out).extension() == ".json") {
        save_graph(gen_erdos_renyi(a.nodes, a.density, a.seed), a.out);
        std::cout << a.out << "\n";
        return kExitOk;
    }
    fs::create_directories(a.out);
    for (int i = 0; i < a.count; ++i) {
        const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(i);
        std::ostringstream name;
        name << "er_n" << a.nodes << "_d" << a.density << "_s" << seed << ".json";
        const fs::path path = fs::path(a.out) / name.str();
        save_graph(gen_erdos_renyi(a.nodes, a.density, seed), path);
        std::cout << path.string() << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::string config;
    std::string out;
    int workers = 0;
    std::optional<int> shots;
    bool exact = false;
    bool resume = false;
    bool quiet = false;
};

int cmd_run(const RunArgs &a) {
    SweepConfig cfg;
    if (!a.config.empty()) {
        if (!fs::exists(a.config)) {
            throw UsageError("config file not found: " + a.config);
        }
        cfg = load_sweep_config(a.config);
    }
    if (!a.out.empty()) {
        cfg.output = a.out;
    }
    if (a.shots) {
        cfg.shots = *a.shots;
    }
    if (a.exact) {
        cfg.shots = 0;
    }
    cfg.validate();

    SweepOptions opts;
    opts.workers = a.workers > 0 ? a.workers : default_worker_count();
    opts.resume = a.resume;
    if (!a.quiet) {
        opts.progress = [](const RunRecord &r, std::size_t done, std::size_t total) {
            std::cerr << "[" << done << "/" << total << "] " << r.cell_id() << " " << r.label()
                      << "  E = " << std::setprecision(6) << r.expectation
                      << "  evals = " << r.evaluations << "\n";
        };
    }
    const auto recs = run_sweep(cfg, opts);
    std::cout << "wrote " << recs.size() << " records to " << cfg.output << " and " << cfg.output
              << ".csv\n";
    return kExitOk;
}

// ---------------------------------------------------------------- score

int cmd_score(const std::string &results, double alpha, const std::string &out) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw UsageError("--alpha must lie in [0, 1]");
    }
    const auto recs = read_results(results);
    const auto scores = score_records(recs, alpha);
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            throw UsageError("cannot write " + out);
        }
    }
    std::ostream &os = out.empty() ? std::cout : file;
    os << "cell,label,expectation,evaluations,iterations,e_norm,i_norm,score\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto &r = recs[i];
        const auto &s = scores[i];
        os << r.cell_id() << "," << r.label() << "," << r.expectation << "," << r.evaluations
           << "," << r.iterations << "," << s.e_norm << "," << s.i_norm << "," << s.score << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string &results, const std::string &lotus_label, double alpha,
               double significance) {
    const auto recs = read_results(results);
    const std::string label = lotus_label.empty() ? default_lotus_label(recs) : lotus_label;

    std::map<std::string, std::vector<double>> e;
    std::map<std::string, std::vector<double>> evals;
    std::map<std::string, std::vector<double>> score;
    const auto scores = score_records(recs, alpha);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        e[recs[i].label()].push_back(recs[i].expectation);
        evals[recs[i].label()].push_back(recs[i].evaluations);
        score[recs[i].label()].push_back(scores[i].score);
    }
    std::cout << std::fixed << std::setprecision(4);
    std::cout << "Per-optimizer medians (" << recs.size() << " records, alpha = " << alpha
              << ")\n";
    std::cout << std::left << std::setw(16) << "optimizer" << std::right << std::setw(8)
              << "runs" << std::setw(14) << "expectation" << std::setw(14) << "evaluations"
              << std::setw(10) << "score" << "\n";
    for (const auto &[l, v] : e) {
        std::cout << std::left << std::setw(16) << l << std::right << std::setw(8) << v.size()
                  << std::setw(14) << median(v) << std::setw(14) << std::setprecision(1)
                  << median(evals[l]) << std::setw(10) << std::setprecision(4)
                  << median(score[l]) << "\n";
    }

    std::cout << "\nImprovement of " << label << " (median over shared cells)\n";
    std::cout << std::left << std::setw(16) << "baseline" << std::right << std::setw(8)
              << "cells" << std::setw(16) << "expectation %" << std::setw(16)
              << "evaluations %" << std::setw(16) << "iterations %" << "\n";
    std::cout << std::setprecision(2);
    for (const auto &imp : improvement_summary(recs, label)) {
        std::cout << std::left << std::setw(16) << imp.baseline << std::right << std::setw(8)
                  << imp.cells << std::setw(16) << imp.expectation_pct << std::setw(16)
                  << imp.evaluation_pct << std::setw(16) << imp.iteration_pct << "\n";
    }

    const auto m = significance_matrix(recs, significance);
    std::cout << "\nWilcoxon signed-rank p-values on final expectation (* = p < " << significance
              << ", n/a = fewer than 5 shared cells)\n";
    std::cout << std::left << std::setw(16) << "";
    for (const auto &l : m.labels) {
        std::cout << std::right << std::setw(14) << l;
    }
    std::cout << "\n" << std::scientific << std::setprecision(2);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        std::cout << std::left << std::setw(16) << m.labels[i];
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            std::ostringstream cell;
            if (m.p_values[i][j]) {
                cell << std::scientific << std::setprecision(2) << *m.p_values[i][j]
                     << (m.significant(i, j) ? "*" : " ");
            } else {
                cell << "n/a ";
            }
            std::cout << std::right << std::setw(14) << cell.str();
        }
        std::cout << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- transfer

struct TransferArgs {
    std::string graph;
    int nodes = 8;
    double density = 0.75;
    std::uint64_t instance_seed = 0;
    int modes = 2;
    int source_depth = 8;
    std::vector<int> depths{8, 16, 32, 64};
    std::uint64_t seed = 0;
    bool hot_start = false;
    bool ar_rescale = false;
    int budget = 2000;
};

int cmd_transfer(const TransferArgs &a) {
    WeightedGraph g;
    if (!a.graph.empty()) {
        if (!fs::exists(a.graph)) {
            throw UsageError("graph file not found: " + a.graph);
        }
        g = load_graph(a.graph);
    } else {
        g = gen_erdos_renyi(a.nodes, a.density, a.instance_seed);
    }
    TransferOptions opts;
    opts.hot_start = a.hot_start;
    opts.settings.budget = a.budget;
    opts.settings.seed = a.seed;
    if (a.ar_rescale) {
        opts.resample.ar_rescale_from = a.source_depth;
    }

    const auto source = lotus_optimize(g, a.source_depth, a.modes, LotusInitConfig{}, opts.settings);
    std::cout << "source: n = " << g.n << ", p = " << a.source_depth << ", K = " << a.modes
              << ", exact expectation " << std::setprecision(10) << source.record.expectation_exact
              << " after " << source.record.evaluations << " evaluations\n\n";

    const auto t = depth_transfer_experiment(g, source.params, a.source_depth, a.depths, opts);
    std::cout << std::setw(7) << "depth" << std::setw(18) << "expectation" << std::setw(18)
              << "gap_to_source";
    if (a.hot_start) {
        std::cout << std::setw(14) << "cold_E" << std::setw(12) << "cold_evals" << std::setw(14)
                  << "warm_E" << std::setw(12) << "warm_evals" << std::setw(9) << "reached";
    }
    std::cout << "\n";
    for (const auto &row : t.rows) {
        std::cout << std::setw(7) << row.depth << std::setw(18) << std::setprecision(10)
                  << row.expectation << std::setw(18) << std::setprecision(6)
                  << row.gap_to_source;
        if (row.hot) {
            std::cout << std::setw(14) << row.hot->cold_expectation << std::setw(12)
                      << row.hot->cold_evaluations << std::setw(14) << row.hot->warm_expectation
                      << std::setw(12) << row.hot->warm_evaluations << std::setw(9)
                      << (row.hot->warm_reached ? "yes" : "no");
        }
        std::cout << "\n";
    }
    std::cout << "\nsuccessive gaps:";
    for (double gap : t.successive_gaps) {
        std::cout << " " << std::setprecision(6) << gap;
    }
    std::cout << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string &fault, bool list) {
    if (list) {
        for (const auto &n : invariant_names()) {
            std::cout << n << "\n";
        }
        return kExitOk;
    }
    SuiteOptions opts;
    if (!fault.empty()) {
        if (fault != "lipschitz") {
            throw UsageError("unknown fault '" + fault + "' (known: lipschitz)");
        }
        opts.inject_fault = fault;
    }
    opts.on_result = [](const CheckResult &r) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(36) << r.name
                  << std::right << std::fixed << std::setprecision(2) << std::setw(8)
                  << r.seconds << " s";
        if (!r.passed) {
            std::cout << "  " << r.detail;
        }
        std::cout << std::endl;
    };
    const auto results = invariant_suite(opts);
    int failed = 0;
    for (const auto &r : results) {
        failed += r.passed ? 0 : 1;
    }
    std::cout << (results.size() - failed) << "/" << results.size() << " checks passed\n";
    return failed ? kExitFailure : kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"LOTUS-QAOA benchmark harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "Write Erdos-Renyi instance files");
    g->add_option("-n,--nodes", gen.nodes, "Number of nodes")->check(CLI::Range(2, 64));
    g->add_option("-d,--density", gen.density, "Edge probability")->check(CLI::Range(0.0, 1.0));
    g->add_option("-s,--seed", gen.seed, "Generator seed (first seed when --count > 1)");
    g->add_option("-c,--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
    g->add_option("-o,--out", gen.out, "Output .json file, or directory when --count > 1")
        ->required();

    RunArgs run;
    auto *r = app.add_subcommand("run", "Execute a benchmark sweep");
    r->add_option("--config", run.config, "Sweep configuration (JSON)");
    r->add_option("--out", run.out, "Result file (NDJSON); a .csv copy is written alongside");
    r->add_option("--workers", run.workers,
                  "Worker threads (default: $LOTUS_WORKERS, else 1)")
        ->check(CLI::PositiveNumber);
    r->add_option("--shots", run.shots, "Shots per evaluation")->check(CLI::NonNegativeNumber);
    r->add_flag("--exact", run.exact, "Exact expectations (same as --shots 0)");
    r->add_flag("--resume", run.resume, "Skip tasks already present in the result file");
    r->add_flag("-q,--quiet", run.quiet, "No per-task progress");

    std::string score_in;
    std::string score_out;
    double alpha = kDefaultScoreAlpha;
    auto *s = app.add_subcommand("score", "Score records within their cells (CSV)");
    s->add_option("results", score_in, "Result file (NDJSON)")->required();
    s->add_option("--alpha", alpha, "Weight of the expectation term");
    s->add_option("-o,--out", score_out, "Write CSV here instead of stdout");

    std::string report_in;
    std::string lotus_label;
    double report_alpha = kDefaultScoreAlpha;
    double significance = 0.05;
    auto *rep = app.add_subcommand("report", "Improvement and significance tables");
    rep->add_option("results", report_in, "Result file (NDJSON)")->required();
    rep->add_option("--lotus", lotus_label, "LOTUS label to compare, e.g. 'lotus(K=2)'");
    rep->add_option("--alpha", report_alpha, "Score weight")->check(CLI::Range(0.0, 1.0));
    rep->add_option("--significance", significance, "Significance level")
        ->check(CLI::Range(0.0, 1.0));

    TransferArgs tr;
    auto *t = app.add_subcommand("transfer", "Depth-transfer experiment (exact mode)");
    t->add_option("--graph", tr.graph, "Instance file; otherwise one is generated");
    t->add_option("-n,--nodes", tr.nodes, "Nodes of the generated instance")
        ->check(CLI::Range(2, kDefaultQubitCap));
    t->add_option("-d,--density", tr.density, "Edge probability")->check(CLI::Range(0.0, 1.0));
    t->add_option("--instance-seed", tr.instance_seed, "Generator seed");
    t->add_option("-K,--modes", tr.modes, "Fourier modes")->check(CLI::PositiveNumber);
    t->add_option("--source-depth", tr.source_depth, "Depth at which parameters are optimized")
        ->check(CLI::PositiveNumber);
    t->add_option("--depths", tr.depths, "Target depths")->delimiter(',');
    t->add_option("--seed", tr.seed, "Optimization seed");
    t->add_option("--budget", tr.budget, "Evaluations per restart")->check(CLI::PositiveNumber);
    t->add_flag("--hot-start", tr.hot_start, "Compare warm and cold starts at each depth");
    t->add_flag("--ar-rescale", tr.ar_rescale, "Rescale lambda to keep decay per unit time");

    std::string fault;
    bool list = false;
    auto *c = app.add_subcommand("check", "Run the invariant suite");
    c->add_option("--inject-fault", fault, "Corrupt one check's input (lipschitz)");
    c->add_flag("--list", list, "List check names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (g->parsed()) {
            return cmd_gen(gen);
        }
        if (r->parsed()) {
            return cmd_run(run);
        }
        if (s->parsed()) {
            return cmd_score(score_in, alpha, score_out);
        }
        if (rep->parsed()) {
            return cmd_report(report_in, lotus_label, report_alpha, significance);
        }
        if (t->parsed()) {
            return cmd_transfer(tr);
        }
        if (c->parsed()) {
            return cmd_check(fault, list);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
