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
#include "lotus/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lotus/engine.hpp"
#include "lotus/oracle/dense.hpp"
#include "lotus/qaoa.hpp"
#include "lotus/rng.hpp"
#include "lotus/score.hpp"
#include "lotus/stats.hpp"

namespace lotus {

namespace {

using std::numbers::pi;

/// Outcome of one check body: empty on success, otherwise the failure detail.
using Verdict = std::optional<std::string>;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

WeightedGraph random_graph(Rng &rng, int n, double density) {
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.bernoulli(density)) {
                g.edges.push_back({i, j, rng.uniform_open()});
            }
        }
    }
    return g;
}

Schedule random_schedule(Rng &rng, int p) {
    std::vector<double> v(static_cast<std::size_t>(2 * p));
    for (auto &x : v) {
        x = rng.uniform(0.0, 2.0 * pi);
    }
    return standard_unpack(v);
}

HfaParams broad_params(Rng &rng, int k) {
    auto p = HfaParams::zeros(k);
    for (int i = 0; i < k; ++i) {
        p.a[i] = rng.normal(0.0, 1.0);
        p.b[i] = rng.normal(0.0, 1.0);
        p.weights[i] = rng.uniform(-1.5, 1.5);
    }
    p.lambda_gamma = rng.uniform(-0.99, 0.99);
    p.lambda_beta = rng.uniform(-0.99, 0.99);
    p.delta_gamma0 = rng.normal(0.0, 1.0);
    p.delta_beta0 = rng.normal(0.0, 1.0);
    return p;
}

Verdict cut_symmetry_and_bounds() {
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 9);
        const auto g = random_graph(rng, n, rng.uniform(0.2, 1.0));
        const double w = g.total_weight();
        for (Bits z = 0; z < (Bits{1} << n); ++z) {
            const double c = cut_value(g, z);
            if (c != cut_value(g, complement(z, n))) {
                return "cut value differs from its complement on graph " + std::to_string(t);
            }
            if (c < 0.0 || c > w + 1e-12) {
                return "cut value " + fmt(c) + " outside [0, " + fmt(w) + "]";
            }
        }
        if (cut_value(g, Bits{0}) != 0.0) {
            return "empty cut is non-zero";
        }
    }
    return std::nullopt;
}

Verdict generator_reproducible() {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (int n : {4, 8, 12}) {
            const double d = 0.3 + 0.1 * static_cast<double>(seed % 7);
            const auto a = gen_erdos_renyi(n, d, seed);
            const auto b = gen_erdos_renyi(n, d, seed);
            if (to_json(a) != to_json(b)) {
                return "gen_erdos_renyi is not reproducible for seed " + std::to_string(seed);
            }
            if (!a.is_connected()) {
                return "generated graph is disconnected";
            }
        }
    }
    return std::nullopt;
}

Verdict brute_force_dominates() {
    Rng rng(202);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 11);
        const auto g = random_graph(rng, n, 0.6);
        const auto best = brute_force_maxcut(g);
        if (n <= oracle::kDenseMaxQubits &&
            std::abs(best.cut_value - oracle::maxcut_enumerate(g)) > 1e-12) {
            return "brute force disagrees with full enumeration";
        }
        for (int s = 0; s < 200; ++s) {
            const Bits z = rng.next_u64() & ((Bits{1} << n) - 1);
            if (cut_value(g, z) > best.cut_value + 1e-12) {
                return "sampled cut beats the brute-force optimum";
            }
        }
    }
    return std::nullopt;
}

Verdict norm_preservation() {
    Rng rng(303);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 10);
        const auto g = random_graph(rng, n, 0.7);
        const auto d = build_cost_diagonal(g);
        auto s = StateVector::plus_state(n);
        for (int l = 0; l < 20; ++l) {
            apply_cost_phase(s, d, rng.uniform(-10, 10));
            apply_mixer(s, rng.uniform(-10, 10));
            worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
        }
    }
    if (worst >= 1e-10) {
        return "norm drift " + fmt(worst);
    }
    return std::nullopt;
}

Verdict dense_oracle() {
    Rng rng(404);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const int p = 1 + static_cast<int>(rng.next_u64() % 2);
        const auto g = random_graph(rng, n, 0.8);
        const auto sched = random_schedule(rng, p);
        const auto fast = evolve(g, sched);
        const auto dense = oracle::evolve_dense(g, sched);
        Complex overlap = 0.0;
        for (std::size_t z = 0; z < fast.dimension(); ++z) {
            overlap += std::conj(fast.amps()[z]) * dense[static_cast<Eigen::Index>(z)];
        }
        if (std::abs(overlap) <= 1.0 - 1e-10) {
            return "fidelity " + fmt(std::abs(overlap)) + " on case " + std::to_string(t);
        }
        const double e_fast = expectation_exact(fast, build_cost_diagonal(g));
        const double e_dense = oracle::expectation_dense(g, dense);
        if (std::abs(e_fast - e_dense) >= 1e-10) {
            return "expectation mismatch " + fmt(e_fast - e_dense);
        }
    }
    return std::nullopt;
}

Verdict analytic_anchor() {
    const WeightedGraph edge{2, {{0, 1, 1.0}}, {}, {}};
    const auto s = evolve(edge, standard_unpack(std::vector<double>{pi / 2, pi / 8}));
    const double e = expectation_exact(s, build_cost_diagonal(edge));
    if (std::abs(e - 1.0) > 1e-9) {
        return "single edge at (pi/2, pi/8) gives " + fmt(e);
    }
    Rng rng(505);
    for (int t = 0; t < 100; ++t) {
        const auto g = random_graph(rng, 1 + static_cast<int>(rng.next_u64() % 10), 0.6);
        const double u = expectation_exact(StateVector::plus_state(g.n), build_cost_diagonal(g));
        if (std::abs(u - 0.5 * g.total_weight()) > 1e-12) {
            return "uniform state expectation differs from W/2";
        }
    }
    return std::nullopt;
}

Verdict beta_periodicity() {
    Rng rng(606);
    for (int t = 0; t < 50; ++t) {
        const auto g = random_graph(rng, 2 + static_cast<int>(rng.next_u64() % 6), 0.7);
        const auto d = build_cost_diagonal(g);
        const int p = 1 + static_cast<int>(rng.next_u64() % 4);
        const auto sched = random_schedule(rng, p);
        const double base = expectation_exact(evolve(d, sched), d);
        for (int l = 0; l < p; ++l) {
            auto shifted = standard_pack(sched);
            shifted[static_cast<std::size_t>(p + l)] += 2.0 * pi;
            const double e = expectation_exact(evolve(d, standard_unpack(shifted)), d);
            if (std::abs(e - base) > 1e-10) {
                return "beta shift by 2 pi changes the expectation by " + fmt(e - base);
            }
        }
    }
    return std::nullopt;
}

Verdict sampling_unbiased() {
    const auto g = gen_erdos_renyi(6, 0.7, 7);
    const auto d = build_cost_diagonal(g);
    const auto state = evolve(d, standard_unpack(std::vector<double>{0.4, 0.3, 0.9, 0.2}));
    const double exact = expectation_exact(state, d);
    double sum = 0.0;
    double var_sum = 0.0;
    const int reps = 200;
    for (int r = 0; r < reps; ++r) {
        const auto est = expectation_sampled(state, d, 1024, derive_seed(99, {static_cast<std::uint64_t>(r)}));
        sum += est.estimate;
        var_sum += est.std_error * est.std_error;
    }
    const double mean = sum / reps;
    const double pooled = std::sqrt(var_sum) / reps;
    if (std::abs(mean - exact) >= 4.0 * pooled) {
        return "sample mean " + fmt(mean) + " vs exact " + fmt(exact) + " (pooled stderr " +
               fmt(pooled) + ")";
    }
    return std::nullopt;
}

Verdict lipschitz(bool corrupt) {
    Rng rng(707);
    long violations = 0;
    std::string first;
    for (int t = 0; t < 1000; ++t) {
        const auto params = broad_params(rng, 1 + static_cast<int>(rng.next_u64() % 5));
        for (int p : {4, 8, 16, 32, 64}) {
            auto sched = hfa_generate(params, p);
            if (corrupt && t == 0) {
                sched.raw_gammas[static_cast<std::size_t>(p / 2)] += 10.0;
            }
            const auto r = certify_schedule(sched, params);
            if (!r.holds()) {
                if (first.empty()) {
                    first = "draw " + std::to_string(t) + ", p = " + std::to_string(p) +
                            ", layer " + std::to_string(r.worst_layer) + ", excess " +
                            fmt(r.max_violation);
                }
                ++violations;
            }
        }
    }
    if (violations > 0) {
        return std::to_string(violations) + " certificate violations (first: " + first + ")";
    }
    return std::nullopt;
}

Verdict permutation_symmetry() {
    LotusInitConfig init;
    Rng rng(808);
    int unsorted = 0;
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 3);
        const int p = 4 + static_cast<int>(rng.next_u64() % 29);
        const auto s = hfa_generate(draw_initial_params(k, init, rng.next_u64()), p);
        auto sorted = s.raw_gammas;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != s.raw_gammas) {
            ++unsorted;
        }
    }
    if (unsorted < 0.95 * draws) {
        return "only " + std::to_string(unsorted) + " of " + std::to_string(draws) +
               " gamma sequences are order-dependent";
    }
    return std::nullopt;
}

Verdict schedule_layout() {
    Rng rng(909);
    for (int t = 0; t < 200; ++t) {
        const int k = 1 + static_cast<int>(rng.next_u64() % 6);
        const auto params = broad_params(rng, k);
        const auto flat = params.flatten();
        if (flat.size() != static_cast<std::size_t>(hfa_dimension(k)) ||
            !(HfaParams::from_flat(flat) == params)) {
            return "flat layout round trip failed for K = " + std::to_string(k);
        }
        const int p = 1 + static_cast<int>(rng.next_u64() % 40);
        const auto a = hfa_generate(params, p);
        if (!(a == hfa_generate(params, p))) {
            return "hfa_generate is not deterministic";
        }
        for (int l = 0; l < p; ++l) {
            const double raw = a.raw_gammas[static_cast<std::size_t>(l)];
            if (raw >= 0.0 && raw < 2.0 * pi && a.gammas[static_cast<std::size_t>(l)] != raw) {
                return "wrapped and raw angles disagree inside [0, 2 pi)";
            }
        }
    }
    return std::nullopt;
}

Verdict optimizer_accounting() {
    const auto g = gen_erdos_renyi(6, 0.75, 31);
    LotusInitConfig init;
    init.n_restarts = 2;
    for (const auto &method : optimizer_ids()) {
        if (method != "nelder-mead" && method != "powell" && method != "fd-lbfgs") {
            continue;
        }
        RunSettings s;
        s.method = method;
        s.shots = 0;
        s.budget = 300;
        s.seed = 4;
        const auto a = lotus_optimize(g, 6, 2, init, s);
        const auto b = lotus_optimize(g, 6, 2, init, s);
        if (a.outcome.x_best.size() != static_cast<std::size_t>(hfa_dimension(2))) {
            return "LOTUS search dimension is not 3K + 4";
        }
        if (a.circuit_executions != static_cast<std::uint64_t>(a.record.evaluations)) {
            return method + ": LOTUS evaluations differ from executed circuits";
        }
        if (a.outcome.f_best != b.outcome.f_best) {
            return method + ": exact-mode rerun changed f_best";
        }
        for (const auto &r : a.restarts) {
            for (std::size_t i = 1; i < r.trace.size(); ++i) {
                if (r.trace[i] > r.trace[i - 1]) {
                    return method + ": best-so-far trace increased";
                }
            }
        }
        const auto c = baseline_optimize(g, 6, s);
        if (c.outcome.x_best.size() != 12) {
            return "baseline search dimension is not 2p";
        }
        if (c.circuit_executions != static_cast<std::uint64_t>(c.record.evaluations)) {
            return method + ": baseline evaluations differ from executed circuits";
        }
        if (baseline_optimize(g, 6, s).outcome.f_best != c.outcome.f_best) {
            return method + ": exact-mode baseline rerun changed f_best";
        }
    }
    return std::nullopt;
}

Verdict score_properties() {
    Rng rng(1001);
    for (int t = 0; t < 10000; ++t) {
        const int size = 1 + static_cast<int>(rng.next_u64() % 8);
        std::vector<ScoreInput> g;
        for (int i = 0; i < size; ++i) {
            g.push_back({rng.uniform(-5, 5), std::floor(rng.uniform(1, 500))});
        }
        const auto s = score_group(g);
        auto h = g;
        const double scale = rng.uniform(0.01, 100);
        const double shift = rng.uniform(-100, 100);
        for (auto &x : h) {
            x.expectation = scale * x.expectation + shift;
        }
        const auto sh = score_group(h);
        std::size_t e_best = 0;
        std::size_t c_best = 0;
        for (int i = 0; i < size; ++i) {
            const auto &r = s[static_cast<std::size_t>(i)];
            if (r.score < 0.0 || r.score > 1.0 ||
                r.score != r.alpha * r.e_norm + (1.0 - r.alpha) * r.i_norm) {
                return "score outside [0, 1] or not the weighted sum";
            }
            if (std::abs(r.e_norm - sh[static_cast<std::size_t>(i)].e_norm) > 1e-9) {
                return "score is not invariant under affine rescaling";
            }
            if (g[static_cast<std::size_t>(i)].expectation > g[e_best].expectation) {
                e_best = static_cast<std::size_t>(i);
            }
            if (g[static_cast<std::size_t>(i)].cost < g[c_best].cost) {
                c_best = static_cast<std::size_t>(i);
            }
        }
        if (g[e_best].cost == g[c_best].cost && s[e_best].score != 1.0) {
            return "dominant record does not score 1";
        }
    }
    const std::vector<ScoreInput> one{{1.5, 10}};
    if (score_group(one)[0].score != 1.0) {
        return "singleton group does not score 1";
    }
    return std::nullopt;
}

RunRecord fake_record(Rng &rng, const std::string &opt, int cell) {
    RunRecord r;
    r.optimizer = opt;
    r.method = opt == "lotus" ? "nelder-mead" : opt;
    r.modes = opt == "lotus" ? 2 : 0;
    r.n_qubits = 8;
    r.depth = 8;
    r.p_graph = 0.75;
    r.seed_index = cell;
    r.seed = rng.next_u64();
    r.expectation = rng.uniform(0, 10);
    r.expectation_exact = rng.uniform(0, 10);
    r.evaluations = 1 + static_cast<int>(rng.next_u64() % 1000);
    r.iterations = 1 + static_cast<int>(rng.next_u64() % 100);
    r.x_best = {rng.normal(0, 1), rng.normal(0, 1)};
    r.best_cut = {8, rng.next_u64() & 0xfe, rng.uniform(0, 10)};
    r.approx_ratio = rng.uniform(0, 1);
    return r;
}

Verdict persistence() {
    Rng rng(1101);
    std::vector<RunRecord> recs;
    for (int c = 0; c < 20; ++c) {
        for (const std::string opt : {"lotus", "powell", "nelder-mead"}) {
            recs.push_back(fake_record(rng, opt, c));
        }
    }
    const auto path = std::filesystem::temp_directory_path() /
                      ("lotus_check_" + std::to_string(rng.next_u64()) + ".jsonl");
    {
        std::ofstream out(path);
        for (const auto &r : recs) {
            append_record(out, r);
        }
    }
    const auto back = load_records(path);
    std::filesystem::remove(path);
    if (back.size() != recs.size()) {
        return "reloaded " + std::to_string(back.size()) + " of " + std::to_string(recs.size()) +
               " records";
    }
    const auto s1 = score_records(recs);
    const auto s2 = score_records(back);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (!same_payload(recs[i], back[i]) || s1[i].score != s2[i].score ||
            s1[i].e_norm != s2[i].e_norm || s1[i].i_norm != s2[i].i_norm) {
            return "record " + std::to_string(i) + " changed after a save/load round trip";
        }
    }
    return std::nullopt;
}

Verdict improvement_self() {
    Rng rng(1201);
    std::vector<RunRecord> recs;
    for (int c = 0; c < 10; ++c) {
        auto l = fake_record(rng, "lotus", c);
        auto b = l;
        b.optimizer = "powell";
        b.method = "powell";
        b.modes = 0;
        recs.push_back(l);
        recs.push_back(b);
    }
    for (const auto &imp : improvement_summary(recs, "lotus(K=2)")) {
        if (imp.expectation_pct != 0.0 || imp.evaluation_pct != 0.0 || imp.iteration_pct != 0.0) {
            return "improvement of a data set against itself is not 0%";
        }
    }
    return std::nullopt;
}

struct Check {
    std::string name;
    std::function<Verdict(const SuiteOptions &)> body;
};

const std::vector<Check> &checks() {
    static const std::vector<Check> all{
        {"instance.cut_symmetry_and_bounds", [](const auto &) { return cut_symmetry_and_bounds(); }},
        {"instance.generator_reproducible", [](const auto &) { return generator_reproducible(); }},
        {"instance.brute_force_dominates", [](const auto &) { return brute_force_dominates(); }},
        {"engine.norm_preservation", [](const auto &) { return norm_preservation(); }},
        {"engine.dense_oracle_equivalence", [](const auto &) { return dense_oracle(); }},
        {"engine.analytic_anchor", [](const auto &) { return analytic_anchor(); }},
        {"engine.beta_periodicity", [](const auto &) { return beta_periodicity(); }},
        {"engine.sampling_unbiased", [](const auto &) { return sampling_unbiased(); }},
        {"schedule.lipschitz_certificate",
         [](const SuiteOptions &o) { return lipschitz(o.inject_fault == "lipschitz"); }},
        {"schedule.permutation_symmetry", [](const auto &) { return permutation_symmetry(); }},
        {"schedule.layout_and_determinism", [](const auto &) { return schedule_layout(); }},
        {"optim.accounting_and_traces", [](const auto &) { return optimizer_accounting(); }},
        {"harness.score_properties", [](const auto &) { return score_properties(); }},
        {"harness.persistence", [](const auto &) { return persistence(); }},
        {"harness.improvement_self", [](const auto &) { return improvement_self(); }},
    };
    return all;
}

} // namespace

std::vector<std::string> invariant_names() {
    std::vector<std::string> names;
    for (const auto &c : checks()) {
        names.push_back(c.name);
    }
    return names;
}

std::vector<CheckResult> invariant_suite(const SuiteOptions &opts) {
    if (opts.inject_fault && *opts.inject_fault != "lipschitz") {
        throw std::invalid_argument("unknown fault '" + *opts.inject_fault + "' (known: lipschitz)");
    }
    std::vector<CheckResult> results;
    for (const auto &c : checks()) {
        CheckResult r;
        r.name = c.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const auto verdict = c.body(opts);
            r.passed = !verdict.has_value();
            r.detail = verdict.value_or("");
        } catch (const std::exception &e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opts.on_result) {
            opts.on_result(r);
        }
        results.push_back(std::move(r));
    }
    return results;
}

} // namespace lotus
