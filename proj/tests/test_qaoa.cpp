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

#include "doctest.h"
#include "helpers.hpp"
#include "lotus/instance.hpp"
#include "lotus/qaoa.hpp"
#include "lotus/transfer.hpp"

using namespace lotus;

namespace {

RunSettings exact(const std::string &method = "nelder-mead", int budget = 2000) {
    RunSettings s;
    s.method = method;
    s.shots = 0;
    s.budget = budget;
    s.seed = 7;
    return s;
}

} // namespace

TEST_CASE("initial parameter draws") {
    LotusInitConfig init;
    const auto a = draw_initial_params(3, init, 11);
    const auto b = draw_initial_params(3, init, 11);
    CHECK(a == b);
    CHECK(a.modes() == 3);
    CHECK(a.lambda_gamma >= 0.5);
    CHECK(a.lambda_gamma <= 0.95);
    CHECK(a.lambda_beta >= 0.5);
    CHECK(a.lambda_beta <= 0.95);
    CHECK_FALSE(draw_initial_params(3, init, 12) == a);

    init.n_restarts = 0;
    CHECK_THROWS(init.validate());
    init = LotusInitConfig{};
    init.lambda_hi = 1.0;
    CHECK_THROWS(init.validate());
}

TEST_CASE("LOTUS on a single edge reaches the optimum") {
    const auto g = test::single_edge();
    RunSettings s;
    s.seed = 3;
    const auto res = lotus_optimize(g, 1, 1, LotusInitConfig{}, s);
    CHECK(res.record.expectation >= 0.95);
    CHECK(res.record.expectation_exact >= 0.95);
    CHECK(res.record.best_cut.cut_value == 1.0);
    CHECK(res.record.approx_ratio.value() <= 1.0 + 1e-9);
    CHECK(res.record.optimizer == "lotus");
    CHECK(res.record.label() == "lotus(K=1)");
}

TEST_CASE("baselines on a single edge reach the optimum with budget 500") {
    const auto g = test::single_edge();
    for (const std::string m : {"nelder-mead", "powell"}) {
        CAPTURE(m);
        RunSettings s;
        s.method = m;
        s.budget = 500;
        s.seed = 5;
        const auto res = baseline_optimize(g, 1, s);
        CHECK(res.record.expectation >= 0.95);
        CHECK(res.outcome.evaluations <= 500);
        CHECK(res.record.label() == m);
        CHECK(res.record.modes == 0);
    }
}

TEST_CASE("search dimensions") {
    auto g = gen_erdos_renyi(5, 0.8, 1);
    for (int p : {2, 8, 24}) {
        const auto b = baseline_optimize(g, p, exact("powell", 2 * p + 2));
        CHECK(b.outcome.x_best.size() == static_cast<std::size_t>(2 * p));
        const auto l = lotus_optimize(g, p, 2, TransferOptions::single_start(), exact("nelder-mead", 20));
        CHECK(l.outcome.x_best.size() == 10);
        CHECK(l.schedule.depth() == p);
    }
}

TEST_CASE("evaluation accounting matches executed circuits") {
    const auto g = gen_erdos_renyi(6, 0.6, 2);
    LotusInitConfig init;
    init.n_restarts = 3;
    for (const std::string m : {"nelder-mead", "powell", "fd-lbfgs"}) {
        CAPTURE(m);
        auto s = exact(m, 150);
        s.shots = 256;
        const auto res = lotus_optimize(g, 4, 2, init, s);
        REQUIRE(res.restarts.size() == 3);
        int sum = 0;
        int iters = 0;
        for (const auto &r : res.restarts) {
            sum += r.evaluations;
            iters += r.iterations;
        }
        CHECK(res.outcome.evaluations == sum);
        CHECK(res.record.evaluations == sum);
        CHECK(res.record.iterations == iters);
        CHECK(res.circuit_executions == static_cast<std::uint64_t>(sum));

        const auto b = baseline_optimize(g, 4, s);
        CHECK(b.circuit_executions == static_cast<std::uint64_t>(b.outcome.evaluations));
    }
}

TEST_CASE("exact mode is reproducible and traces are monotone") {
    const auto g = gen_erdos_renyi(6, 0.75, 9);
    const auto a = lotus_optimize(g, 6, 2, LotusInitConfig{}, exact());
    const auto b = lotus_optimize(g, 6, 2, LotusInitConfig{}, exact());
    CHECK(a.outcome.f_best == b.outcome.f_best);
    CHECK(a.outcome.x_best == b.outcome.x_best);
    CHECK(same_payload(a.record, b.record));
    for (const auto &r : a.restarts) {
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            CHECK(r.trace[i] <= r.trace[i - 1]);
        }
    }
    // In exact mode the reported expectation is the exact value.
    CHECK(a.record.expectation == a.record.expectation_exact);
    CHECK(a.record.expectation == doctest::Approx(-a.outcome.f_best).epsilon(1e-12));

    const auto c = baseline_optimize(g, 6, exact("powell"));
    const auto d = baseline_optimize(g, 6, exact("powell"));
    CHECK(same_payload(c.record, d.record));
}

TEST_CASE("sampled runs are seed-deterministic") {
    const auto g = gen_erdos_renyi(5, 0.75, 4);
    RunSettings s;
    s.budget = 100;
    s.seed = 99;
    LotusInitConfig init;
    init.n_restarts = 2;
    const auto a = lotus_optimize(g, 3, 2, init, s);
    const auto b = lotus_optimize(g, 3, 2, init, s);
    CHECK(same_payload(a.record, b.record));
    s.seed = 100;
    const auto c = lotus_optimize(g, 3, 2, init, s);
    CHECK_FALSE(c.outcome.x_best == a.outcome.x_best);
}

TEST_CASE("record invariants") {
    Rng rng(77);
    for (int t = 0; t < 5; ++t) {
        const auto g = gen_erdos_renyi(6, 0.5 + 0.1 * t, rng.next_u64());
        RunSettings s;
        s.budget = 80;
        s.seed = rng.next_u64();
        const auto r = baseline_optimize(g, 3, s).record;
        CHECK(r.expectation >= 0.0);
        CHECK(r.expectation <= g.total_weight());
        REQUIRE(r.approx_ratio.has_value());
        CHECK(*r.approx_ratio >= 0.0);
        CHECK(*r.approx_ratio <= 1.0 + 1e-9);
        CHECK(r.best_cut.cut_value == doctest::Approx(cut_value(g, r.best_cut.bits)));
        CHECK(r.total_weight == g.total_weight());
    }
}

TEST_CASE("LOTUS lambda stays inside the stable region") {
    const auto g = gen_erdos_renyi(5, 1.0, 3);
    const auto res = lotus_optimize(g, 8, 2, LotusInitConfig{}, exact("powell", 400));
    CHECK(std::abs(res.params.lambda_gamma) <= kLambdaClamp);
    CHECK(std::abs(res.params.lambda_beta) <= kLambdaClamp);
}

TEST_CASE("finite differences on the exact QAOA objective") {
    const auto g = gen_erdos_renyi(5, 0.8, 21);
    QaoaSimulator sim(g);
    Rng rng(5);
    const auto f = [&](std::span<const double> x) {
        return sim.expectation(standard_unpack(x), 0, 0);
    };
    for (int t = 0; t < 5; ++t) {
        std::vector<double> x(6);
        for (auto &v : x) {
            v = rng.uniform(0.0, 3.0);
        }
        const double h = 1e-5;
        const auto g2 = finite_difference_gradient(f, x, h);
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto at = [&](double dx) {
                auto y = x;
                y[i] += dx;
                return f(y);
            };
            const double hh = 1e-3;
            const double five = (-at(2 * hh) + 8 * at(hh) - 8 * at(-hh) + at(-2 * hh)) / (12 * hh);
            CHECK(std::abs(g2[i] - five) <= 1e-4 * std::max(1.0, std::abs(five)));
        }
    }
}
