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
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lotus/rng.hpp"
#include "lotus/score.hpp"
#include "lotus/stats.hpp"
#include "lotus/sweep.hpp"
#include "lotus/transfer.hpp"

using namespace lotus;
namespace fs = std::filesystem;

namespace {

RunRecord synthetic(const std::string &opt, int modes, int seed_index, double e, int evals,
                    int iters = 10) {
    RunRecord r;
    r.optimizer = opt;
    r.method = opt == "lotus" ? "nelder-mead" : opt;
    r.modes = modes;
    r.n_qubits = 8;
    r.depth = 8;
    r.p_graph = 0.75;
    r.seed_index = seed_index;
    r.expectation = e;
    r.expectation_exact = e;
    r.evaluations = evals;
    r.iterations = iters;
    return r;
}

SweepConfig tiny_sweep(const fs::path &out) {
    SweepConfig cfg;
    cfg.qubits = {4};
    cfg.depths = {2, 3};
    cfg.densities = {0.75};
    cfg.modes = {1, 2};
    cfg.seeds = 2;
    cfg.optimizers = {"nelder-mead", "powell"};
    cfg.shots = 0;
    cfg.budget = 60;
    cfg.init.n_restarts = 2;
    cfg.output = out.string();
    return cfg;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lotus_test_" + std::to_string(std::hash<std::string>{}(
                                    std::to_string(reinterpret_cast<std::uintptr_t>(this)))));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("score: endpoint example") {
    const std::vector<ScoreInput> g{{2.0, 50}, {1.0, 100}};
    const auto s = score_group(g);
    CHECK(s[0].e_norm == 1.0);
    CHECK(s[0].i_norm == 1.0);
    CHECK(s[0].score == 1.0);
    CHECK(s[1].e_norm == 0.0);
    CHECK(s[1].i_norm == 0.0);
    CHECK(s[1].score == 0.0);
    CHECK(s[0].alpha == 0.7);
}

TEST_CASE("score: degenerate groups and errors") {
    const std::vector<ScoreInput> one{{3.0, 10}};
    CHECK(score_group(one)[0].score == 1.0);
    const std::vector<ScoreInput> tied{{3.0, 10}, {3.0, 20}};
    const auto s = score_group(tied);
    CHECK(s[0].e_norm == 1.0);
    CHECK(s[1].e_norm == 1.0);
    CHECK(s[0].score == 1.0);
    CHECK(s[1].score == doctest::Approx(0.7));
    CHECK_THROWS(score_group(std::vector<ScoreInput>{}));
    CHECK_THROWS(score_group(one, 1.5));
}

TEST_CASE("score: properties over random groups") {
    Rng rng(2024);
    for (int t = 0; t < 10000; ++t) {
        const int size = 1 + static_cast<int>(rng.next_u64() % 6);
        std::vector<ScoreInput> g;
        for (int i = 0; i < size; ++i) {
            g.push_back({rng.uniform(-5, 5), std::floor(rng.uniform(1, 200))});
        }
        if (rng.bernoulli(0.1)) {
            for (auto &x : g) {
                x.expectation = g[0].expectation;
            }
        }
        const double alpha = rng.uniform(0, 1);
        const auto s = score_group(g, alpha);

        const double scale = rng.uniform(0.1, 10);
        const double shift = rng.uniform(-10, 10);
        auto h = g;
        for (auto &x : h) {
            x.expectation = scale * x.expectation + shift;
        }
        const auto sh = score_group(h, alpha);

        bool all_same = true;
        for (int i = 0; i < size; ++i) {
            all_same = all_same && g[i].expectation == g[0].expectation;
        }
        for (int i = 0; i < size; ++i) {
            CHECK(s[i].score == alpha * s[i].e_norm + (1 - alpha) * s[i].i_norm);
            CHECK(s[i].score >= 0.0);
            CHECK(s[i].score <= 1.0);
            CHECK(std::abs(sh[i].e_norm - s[i].e_norm) <= 1e-9);
            CHECK(sh[i].i_norm == s[i].i_norm);
            if (all_same) {
                CHECK(s[i].e_norm == 1.0);
            }
        }
    }
}

TEST_CASE("score_records groups by cell") {
    std::vector<RunRecord> recs{
        synthetic("lotus", 2, 0, 2.0, 50),
        synthetic("powell", 0, 0, 1.0, 100),
        synthetic("lotus", 2, 1, 0.5, 100),
        synthetic("powell", 0, 1, 1.5, 300),
    };
    const auto s = score_records(recs);
    CHECK(s[0].score == 1.0);
    CHECK(s[1].score == 0.0);
    CHECK(s[2].score == doctest::Approx(0.3));
    CHECK(s[3].score == doctest::Approx(0.7));
}

TEST_CASE("improvement summary formulas") {
    std::vector<RunRecord> recs;
    for (int i = 0; i < 6; ++i) {
        const double eb = 1.0 + i;
        const int ib = 100 * (i + 1);
        recs.push_back(synthetic("fd-lbfgs", 0, i, eb, ib, 1000));
        recs.push_back(synthetic("lotus", 2, i, 1.272 * eb, static_cast<int>(std::lround(0.067 * ib)), 67));
    }
    const auto imp = improvement_summary(recs, "lotus(K=2)");
    REQUIRE(imp.size() == 1);
    CHECK(imp[0].baseline == "fd-lbfgs");
    CHECK(imp[0].cells == 6);
    CHECK(imp[0].expectation_pct == doctest::Approx(27.2));
    CHECK(imp[0].iteration_pct == doctest::Approx(93.3));
    CHECK(imp[0].evaluation_pct == doctest::Approx(93.3).epsilon(0.01));

    std::vector<RunRecord> same;
    for (int i = 0; i < 4; ++i) {
        same.push_back(synthetic("lotus", 2, i, 3.0 + i, 40));
        same.push_back(synthetic("powell", 0, i, 3.0 + i, 40));
    }
    const auto zero = improvement_summary(same, "lotus(K=2)");
    CHECK(zero[0].expectation_pct == 0.0);
    CHECK(zero[0].evaluation_pct == 0.0);
    CHECK(zero[0].iteration_pct == 0.0);

    std::vector<RunRecord> disjoint{synthetic("lotus", 2, 0, 1, 1), synthetic("powell", 0, 1, 1, 1)};
    CHECK_THROWS(improvement_summary(disjoint, "lotus(K=2)"));
    CHECK(default_lotus_label(recs) == "lotus(K=2)");
}

TEST_CASE("wilcoxon signed-rank") {
    std::vector<double> x(10);
    std::vector<double> y(10);
    for (int i = 0; i < 10; ++i) {
        x[i] = 0.37 * i * i - i;
        y[i] = x[i] + 1.0;
    }
    const auto r = wilcoxon_signed_rank(x, y);
    CHECK(r.exact);
    CHECK(r.n_used == 10);
    CHECK(r.p_value == doctest::Approx(2.0 / 1024.0));

    const auto self = wilcoxon_signed_rank(x, x);
    CHECK(self.n_used == 0);
    CHECK(self.p_value == 1.0);

    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        const int n = 5 + static_cast<int>(rng.next_u64() % 60);
        std::vector<double> a(static_cast<std::size_t>(n));
        std::vector<double> b(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            a[i] = rng.normal(0, 1);
            b[i] = rng.bernoulli(0.2) ? a[i] : rng.normal(0.1, 1);
        }
        const auto ab = wilcoxon_signed_rank(a, b);
        const auto ba = wilcoxon_signed_rank(b, a);
        CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
        CHECK(ab.p_value > 0.0);
        CHECK(ab.p_value <= 1.0);
    }

    // Tied magnitudes switch to the normal approximation.
    std::vector<double> t1(60, 0.0);
    std::vector<double> t2(60);
    for (int i = 0; i < 60; ++i) {
        t2[i] = (i % 3 == 0) ? -1.0 : 1.0;
    }
    const auto tied = wilcoxon_signed_rank(t1, t2);
    CHECK_FALSE(tied.exact);
    CHECK(tied.p_value < 0.05);
    CHECK_THROWS(wilcoxon_signed_rank(t1, std::vector<double>{1.0}));
}

TEST_CASE("significance matrix") {
    std::vector<RunRecord> recs;
    for (int i = 0; i < 8; ++i) {
        recs.push_back(synthetic("lotus", 2, i, 5.0 + 0.1 * i, 10));
        recs.push_back(synthetic("powell", 0, i, 4.0 + 0.1 * i, 10));
        if (i < 3) {
            recs.push_back(synthetic("nelder-mead", 0, i, 4.0, 10));
        }
    }
    const auto m = significance_matrix(recs);
    REQUIRE(m.labels.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(m.p_values[i][i].value_or(1.0) == 1.0);
        CHECK_FALSE(m.significant(i, i));
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(m.p_values[i][j].has_value() == m.p_values[j][i].has_value());
            if (m.p_values[i][j]) {
                CHECK(*m.p_values[i][j] == *m.p_values[j][i]);
            }
        }
    }
    const auto idx = [&](const std::string &l) {
        return static_cast<std::size_t>(std::find(m.labels.begin(), m.labels.end(), l) -
                                        m.labels.begin());
    };
    CHECK(m.significant(idx("lotus(K=2)"), idx("powell")));
    CHECK_FALSE(m.p_values[idx("lotus(K=2)")][idx("nelder-mead")].has_value());
    CHECK(m.pairs[idx("lotus(K=2)")][idx("nelder-mead")] == 3);
}

TEST_CASE("record JSON round trip and re-scoring") {
    TempDir tmp;
    const auto path = tmp.path / "r.jsonl";
    Rng rng(5);
    std::vector<RunRecord> recs;
    for (int i = 0; i < 20; ++i) {
        auto r = synthetic(i % 2 ? "lotus" : "powell", i % 2 ? 3 : 0, i / 4,
                           rng.uniform(0, 10), 1 + static_cast<int>(rng.next_u64() % 500));
        r.seed = rng.next_u64();
        r.expectation_exact = rng.uniform(0, 10) / 3.0;
        r.x_best = {rng.normal(0, 1), 1.0 / 3.0, -0.0, 1e-300};
        r.best_cut = {8, 0b10110010, 5.5};
        if (i % 3) {
            r.approx_ratio = rng.uniform(0, 1);
        }
        r.wall_time = rng.uniform(0, 1);
        recs.push_back(r);
    }
    {
        std::ofstream out(path);
        for (const auto &r : recs) {
            append_record(out, r);
        }
    }
    const auto back = load_records(path);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(same_payload(back[i], recs[i]));
        CHECK(back[i].wall_time == recs[i].wall_time);
    }
    const auto s1 = score_records(recs);
    const auto s2 = score_records(back);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(s1[i].score == s2[i].score);
    }

    // A torn final line from an interrupted append is dropped.
    {
        std::ofstream out(path, std::ios::app);
        out << "{\"seed\": 1, \"optim";
    }
    CHECK(load_records(path).size() == recs.size());

    std::ostringstream csv;
    write_records_csv(csv, recs);
    const std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 21);
}

TEST_CASE("sweep config JSON") {
    SweepConfig cfg;
    cfg.qubits = {6};
    cfg.init.lambda_lo = 0.6;
    const auto back = sweep_config_from_json(to_json(cfg));
    CHECK(to_json(back) == to_json(cfg));
    CHECK(sweep_config_from_json(nlohmann::json::object()).depths == std::vector<int>{4, 8, 16, 24});
    CHECK_THROWS(sweep_config_from_json(nlohmann::json{{"qubitz", {8}}}));
    CHECK_THROWS(sweep_config_from_json(nlohmann::json{{"seeds", 0}}));
    CHECK_THROWS(sweep_config_from_json(nlohmann::json{{"depths", nlohmann::json::array()}}));
    const SweepConfig defaults;
    CHECK(defaults.qubits == std::vector<int>{8, 12});
    CHECK(defaults.depths.front() == 4);
    CHECK(defaults.depths.back() == 24);
}

TEST_CASE("sweep plan and accounting") {
    SweepConfig cfg;
    cfg.qubits = {4};
    cfg.depths = {2};
    cfg.densities = {1.0};
    cfg.modes = {2};
    cfg.seeds = 1;
    cfg.optimizers = {"powell"};
    CHECK(plan_sweep(cfg).size() == 2);
    cfg.modes = {2, 3};
    CHECK(plan_sweep(cfg).size() == 3);

    const auto tasks = plan_sweep(tiny_sweep("x"));
    CHECK(tasks.size() == 2 * 2 * (2 + 2));
    // Every task in one cell uses the same instance.
    const auto cfg2 = tiny_sweep("x");
    CHECK(instance_seed(cfg2, 4, 0.75, 0) != instance_seed(cfg2, 4, 0.75, 1));
    CHECK(task_seed(cfg2, tasks[0]) != task_seed(cfg2, tasks[1]));
}

TEST_CASE("sweep: determinism, worker independence, files and resume") {
    TempDir tmp;
    const auto out = tmp.path / "res.jsonl";
    auto cfg = tiny_sweep(out);

    SweepOptions mem;
    mem.write_files = false;
    const auto a = run_sweep(cfg, mem);
    mem.workers = 3;
    const auto b = run_sweep(cfg, mem);
    REQUIRE(a.size() == 16);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(same_payload(a[i], b[i]));
    }
    for (std::size_t i = 0; i < a.size(); i += 4) {
        // LOTUS and baselines in a cell share the instance.
        CHECK(a[i].instance_seed == a[i + 3].instance_seed);
        CHECK(a[i].total_weight == a[i + 3].total_weight);
    }

    SweepOptions disk;
    disk.workers = 2;
    const auto c = run_sweep(cfg, disk);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out.string() + ".csv"));
    CHECK_FALSE(fs::exists(resume_marker(out)));
    const auto loaded = load_records(out);
    REQUIRE(loaded.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(same_payload(loaded[i], a[i]));
    }

    // Simulate an interrupted sweep: keep the first 5 lines and the marker.
    {
        std::ifstream in(out);
        std::string line;
        std::string head;
        for (int i = 0; i < 5 && std::getline(in, line); ++i) {
            head += line + "\n";
        }
        in.close();
        std::ofstream(out) << head;
        std::ofstream(resume_marker(out)) << "";
    }
    int ran = 0;
    disk.resume = true;
    disk.progress = [&](const RunRecord &, std::size_t, std::size_t) { ++ran; };
    const auto d = run_sweep(cfg, disk);
    CHECK(ran == 11);
    REQUIRE(d.size() == a.size());
    const auto resumed = load_records(out);
    REQUIRE(resumed.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(same_payload(resumed[i], a[i]));
    }
    CHECK_FALSE(fs::exists(resume_marker(out)));
}

TEST_CASE("default worker count reads the environment") {
    ::setenv("LOTUS_WORKERS", "3", 1);
    CHECK(default_worker_count() == 3);
    ::setenv("LOTUS_WORKERS", "zero", 1);
    CHECK(default_worker_count() == 1);
    ::unsetenv("LOTUS_WORKERS");
    CHECK(default_worker_count() == 1);
}

TEST_CASE("depth transfer") {
    const auto g = gen_erdos_renyi(5, 0.75, 12);
    auto params = draw_initial_params(2, LotusInitConfig{}, 3);
    const auto t = depth_transfer_experiment(g, params, 8, {8, 16, 32});
    CHECK(t.source_depth == 8);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].gap_to_source == 0.0);
    CHECK(t.rows[0].expectation == t.source_expectation);
    CHECK(t.successive_gaps.size() == 2);
    CHECK(t.successive_gaps[0] == std::abs(t.rows[0].expectation - t.rows[1].expectation));

    TransferOptions opts;
    opts.hot_start = true;
    opts.settings.budget = 150;
    const auto h = depth_transfer_experiment(g, params, 4, {4, 6}, opts);
    CHECK_FALSE(h.rows[0].hot.has_value());
    REQUIRE(h.rows[1].hot.has_value());
    const auto &hs = *h.rows[1].hot;
    CHECK(hs.cold_evaluations <= 150);
    CHECK(hs.warm_evaluations <= 150);
    CHECK(hs.warm_evaluations >= 1);
    if (hs.warm_reached) {
        CHECK(hs.warm_expectation >= hs.cold_expectation - opts.match_tol);
    }
}
