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
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lotus/qaoa.hpp"
#include "lotus/rng.hpp"

namespace lotus {

namespace {

// Stream tags for derive_seed().
enum : std::uint64_t {
    kTagInit = 1,
    kTagEval = 2,
    kTagVerify = 3,
    kTagReadout = 4,
    kTagBaselineInit = 5,
};

using Clock = std::chrono::steady_clock;

void fill_readout(QaoaSimulator &sim, const Schedule &sched, const RunSettings &settings,
                  RunRecord &rec) {
    const auto &g = sim.graph();
    const StateVector state = evolve(sim.diagonal(), sched);
    rec.expectation_exact = expectation_exact(state, sim.diagonal());
    if (settings.shots == 0 || settings.verify_shots == 0) {
        rec.expectation = rec.expectation_exact;
    } else {
        rec.expectation = expectation_sampled(state, sim.diagonal(), settings.verify_shots,
                                              derive_seed(settings.seed, {kTagVerify}))
                              .estimate;
    }
    rec.best_cut = sample_best_bitstring(state, g, std::max(1, settings.readout_shots),
                                         derive_seed(settings.seed, {kTagReadout}));
    rec.total_weight = g.total_weight();
    if (g.n <= kBruteForceMaxNodes) {
        const double opt = brute_force_maxcut(g).cut_value;
        if (opt > 0.0) {
            rec.approx_ratio = rec.expectation_exact / opt;
        }
    }
}

RunRecord base_record(const WeightedGraph &g, int p, const RunSettings &settings) {
    RunRecord rec;
    rec.seed = settings.seed;
    rec.instance_seed = g.seed.value_or(0);
    rec.p_graph = g.p_graph.value_or(0.0);
    rec.n_qubits = g.n;
    rec.depth = p;
    rec.shots = settings.shots;
    rec.method = settings.method;
    return rec;
}

} // namespace

void LotusInitConfig::validate() const {
    if (n_restarts < 1) {
        throw std::invalid_argument("LotusInitConfig: n_restarts must be >= 1");
    }
    if (!(-1.0 < lambda_lo && lambda_lo <= lambda_hi && lambda_hi < 1.0)) {
        throw std::invalid_argument("LotusInitConfig: lambda range must lie inside (-1, 1)");
    }
    if (!(sigma_spectral >= 0.0 && sigma_residual >= 0.0 && weight_sigma >= 0.0)) {
        throw std::invalid_argument("LotusInitConfig: standard deviations must be >= 0");
    }
}

HfaParams draw_initial_params(int modes, const LotusInitConfig &init, std::uint64_t seed) {
    init.validate();
    Rng rng(seed);
    HfaParams p = HfaParams::zeros(modes);
    for (auto &v : p.a) {
        v = rng.normal(0.0, init.sigma_spectral);
    }
    for (auto &v : p.b) {
        v = rng.normal(0.0, init.sigma_spectral);
    }
    p.lambda_gamma = rng.uniform(init.lambda_lo, init.lambda_hi);
    p.lambda_beta = rng.uniform(init.lambda_lo, init.lambda_hi);
    p.delta_gamma0 = rng.normal(0.0, init.sigma_residual);
    p.delta_beta0 = rng.normal(0.0, init.sigma_residual);
    for (auto &v : p.weights) {
        v = rng.normal(init.weight_mean, init.weight_sigma);
    }
    return p;
}

MinimizeOptions RunSettings::minimize_options() const {
    MinimizeOptions o;
    o.budget = budget;
    o.tol = tol.value_or(shots == 0 ? 1e-6 : 1e-3);
    o.fd_step = fd_step.value_or(shots == 0 ? 1e-5 : 0.1);
    o.seed = seed;
    return o;
}

OptimizerOutcome lotus_descent(QaoaSimulator &sim, int p, const HfaParams &start,
                               const RunSettings &settings, std::uint64_t stream,
                               std::vector<double> *eval_history) {
    const int modes = start.modes();
    const int dim = hfa_dimension(modes);
    Bounds bounds = Bounds::unbounded(dim);
    for (int i : {2 * modes, 2 * modes + 1}) {
        bounds.lower[static_cast<std::size_t>(i)] = -kLambdaClamp;
        bounds.upper[static_cast<std::size_t>(i)] = kLambdaClamp;
    }
    std::uint64_t counter = 0;
    Objective obj(
        dim,
        [&](std::span<const double> x) {
            const Schedule sched = hfa_generate(HfaParams::from_flat(x), p);
            const double e = sim.expectation(
                sched, settings.shots, derive_seed(settings.seed, {kTagEval, stream, counter++}));
            if (eval_history) {
                eval_history->push_back(e);
            }
            return -e;
        },
        bounds);
    const auto x0 = start.flatten();
    return minimize(settings.method, obj, x0, settings.minimize_options());
}

LotusResult lotus_optimize(const WeightedGraph &g, int p, int modes, const LotusInitConfig &init,
                           const RunSettings &settings) {
    if (p < 1 || modes < 1) {
        throw std::invalid_argument("lotus_optimize: p and K must be >= 1");
    }
    init.validate();
    const auto t0 = Clock::now();
    QaoaSimulator sim(g);

    LotusResult res;
    std::size_t best = 0;
    for (int r = 0; r < init.n_restarts; ++r) {
        const auto start = draw_initial_params(
            modes, init, derive_seed(settings.seed, {kTagInit, static_cast<std::uint64_t>(r)}));
        res.restarts.push_back(
            lotus_descent(sim, p, start, settings, static_cast<std::uint64_t>(r)));
        if (res.restarts.back().f_best < res.restarts[best].f_best) {
            best = res.restarts.size() - 1;
        }
    }
    res.circuit_executions = sim.circuit_executions();

    res.outcome = res.restarts[best];
    res.outcome.evaluations = 0;
    res.outcome.iterations = 0;
    res.outcome.converged = true;
    for (const auto &o : res.restarts) {
        res.outcome.evaluations += o.evaluations;
        res.outcome.iterations += o.iterations;
        res.outcome.converged = res.outcome.converged && o.converged;
    }
    res.params = HfaParams::from_flat(res.outcome.x_best);
    res.schedule = hfa_generate(res.params, p);

    auto &rec = res.record;
    rec = base_record(g, p, settings);
    rec.optimizer = "lotus";
    rec.modes = modes;
    rec.iterations = res.outcome.iterations;
    rec.evaluations = res.outcome.evaluations;
    rec.x_best = res.outcome.x_best;
    fill_readout(sim, res.schedule, settings, rec);
    rec.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

BaselineResult baseline_optimize(const WeightedGraph &g, int p, const RunSettings &settings) {
    if (p < 1) {
        throw std::invalid_argument("baseline_optimize: p must be >= 1");
    }
    const auto t0 = Clock::now();
    QaoaSimulator sim(g);
    const int dim = 2 * p;
    constexpr double kTwoPi = 2.0 * std::numbers::pi;

    Rng rng(derive_seed(settings.seed, {kTagBaselineInit}));
    std::vector<double> x0(static_cast<std::size_t>(dim));
    for (auto &v : x0) {
        v = rng.uniform(0.0, kTwoPi);
    }

    std::uint64_t counter = 0;
    Objective obj(
        dim,
        [&](std::span<const double> x) {
            const Schedule sched = standard_unpack(x);
            return -sim.expectation(sched, settings.shots,
                                    derive_seed(settings.seed, {kTagEval, 0, counter++}));
        },
        Bounds::box(dim, 0.0, kTwoPi));

    BaselineResult res;
    res.outcome = minimize(settings.method, obj, x0, settings.minimize_options());
    res.circuit_executions = sim.circuit_executions();
    res.schedule = standard_unpack(res.outcome.x_best);

    auto &rec = res.record;
    rec = base_record(g, p, settings);
    rec.optimizer = settings.method;
    rec.modes = 0;
    rec.iterations = res.outcome.iterations;
    rec.evaluations = res.outcome.evaluations;
    rec.x_best = res.outcome.x_best;
    fill_readout(sim, res.schedule, settings, rec);
    rec.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return res;
}

} // namespace lotus
