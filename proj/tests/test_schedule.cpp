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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "lotus/qaoa.hpp"
#include "lotus/rng.hpp"
#include "lotus/schedule.hpp"

using namespace lotus;
using std::numbers::pi;

namespace {

HfaParams random_params(Rng &rng, int k, bool pure_fourier = false) {
    auto p = HfaParams::zeros(k);
    for (int i = 0; i < k; ++i) {
        p.a[i] = rng.uniform(-1, 1);
        p.b[i] = rng.uniform(-1, 1);
        p.weights[i] = rng.uniform(-1, 1);
    }
    p.lambda_gamma = rng.uniform(0.5, 0.95);
    p.lambda_beta = rng.uniform(0.5, 0.95);
    if (!pure_fourier) {
        p.delta_gamma0 = rng.uniform(-1, 1);
        p.delta_beta0 = rng.uniform(-1, 1);
    }
    return p;
}

/// Linear interpolation of (xs, ys) at x, extrapolating from the end segments.
double interp(const std::vector<double> &xs, const std::vector<double> &ys, double x) {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t hi = std::clamp<std::size_t>(static_cast<std::size_t>(it - xs.begin()), 1, xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}

} // namespace

TEST_CASE("temporal grid and wrap_angle") {
    const auto g = temporal_grid(4);
    CHECK(g == std::vector<double>{0.125, 0.375, 0.625, 0.875});
    CHECK_THROWS(temporal_grid(0));
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(2 * pi) == 0.0);
    CHECK(wrap_angle(-0.5) == doctest::Approx(2 * pi - 0.5));
    CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * pi));
    CHECK(wrap_angle(-1e-300) < 2 * pi);
}

TEST_CASE("hfa_generate: zero parameters give zero angles") {
    const auto s = hfa_generate(HfaParams::zeros(3), 6);
    CHECK(s.depth() == 6);
    for (int l = 0; l < 6; ++l) {
        CHECK(s.gammas[l] == 0.0);
        CHECK(s.betas[l] == 0.0);
    }
}

TEST_CASE("hfa_generate: hand-computed K=1, p=2 example") {
    auto params = HfaParams::zeros(1);
    params.a = {1.0};
    params.weights = {1.0};
    params.delta_gamma0 = 0.2;
    params.lambda_gamma = 0.5;
    const auto s = hfa_generate(params, 2);
    // sin(pi/4) + 0.2 and sin(3 pi/4) + 0.5 * 0.2
    CHECK(std::abs(s.raw_gammas[0] - 0.9071067811865476) < 1e-12);
    CHECK(std::abs(s.raw_gammas[1] - 0.8071067811865476) < 1e-12);
    CHECK(s.raw_betas == std::vector<double>{0.0, 0.0});
    CHECK(s.gammas == s.raw_gammas);
}

TEST_CASE("hfa_generate: matches the closed form lambda^(l-1) residual") {
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        const auto params = random_params(rng, 3);
        const int p = 1 + static_cast<int>(rng.next_u64() % 20);
        const auto s = hfa_generate(params, p);
        for (int l = 1; l <= p; ++l) {
            const double x = (l - 0.5) / p;
            double g = std::pow(params.lambda_gamma, l - 1) * params.delta_gamma0;
            double b = std::pow(params.lambda_beta, l - 1) * params.delta_beta0;
            for (int k = 1; k <= 3; ++k) {
                g += params.a[k - 1] * params.weights[k - 1] * std::sin(k * pi * x);
                b += params.b[k - 1] * params.weights[k - 1] * std::cos(k * pi * x);
            }
            CHECK(s.raw_gammas[l - 1] == doctest::Approx(g).epsilon(1e-12));
            CHECK(s.raw_betas[l - 1] == doctest::Approx(b).epsilon(1e-12));
            CHECK(s.gammas[l - 1] >= 0.0);
            CHECK(s.gammas[l - 1] < 2 * pi);
            CHECK(s.gammas[l - 1] == doctest::Approx(wrap_angle(g)));
        }
    }
}

TEST_CASE("hfa_generate: input errors and determinism") {
    CHECK_THROWS(hfa_generate(HfaParams::zeros(2), 0));
    auto bad = HfaParams::zeros(2);
    bad.a[1] = std::nan("");
    CHECK_THROWS_AS(hfa_generate(bad, 4), std::invalid_argument);
    bad = HfaParams::zeros(2);
    bad.weights.pop_back();
    CHECK_THROWS_AS(hfa_generate(bad, 4), std::invalid_argument);

    Rng rng(6);
    const auto params = random_params(rng, 4);
    CHECK(hfa_generate(params, 24) == hfa_generate(params, 24));
}

TEST_CASE("flat layout is 3K + 4 and round-trips") {
    CHECK(hfa_dimension(4) == 16);
    CHECK(HfaParams::zeros(4).flatten().size() == 16);
    Rng rng(2);
    for (int k = 1; k <= 6; ++k) {
        const auto params = random_params(rng, k);
        const auto flat = params.flatten();
        CHECK(flat.size() == static_cast<std::size_t>(3 * k + 4));
        CHECK(HfaParams::from_flat(flat) == params);
        // Layout: a, b, lambda_gamma, lambda_beta, delta_gamma0, delta_beta0, W.
        CHECK(flat[2 * k] == params.lambda_gamma);
        CHECK(flat[2 * k + 1] == params.lambda_beta);
        CHECK(flat[2 * k + 2] == params.delta_gamma0);
        CHECK(flat[2 * k + 3] == params.delta_beta0);
        CHECK(flat[2 * k + 4] == params.weights[0]);
    }
    const std::vector<double> bad(8);
    CHECK_THROWS(HfaParams::from_flat(bad));
}

TEST_CASE("standard pack/unpack") {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const int p = 1 + static_cast<int>(rng.next_u64() % 10);
        std::vector<double> v(static_cast<std::size_t>(2 * p));
        for (auto &x : v) {
            x = rng.uniform(-10, 10);
        }
        const auto s = standard_unpack(v);
        CHECK(s.depth() == p);
        CHECK(standard_pack(s) == v);
        CHECK(standard_unpack(standard_pack(s)) == s);
    }
    const auto one = standard_unpack(std::vector<double>{0.3, 0.7});
    CHECK(one.raw_gammas == std::vector<double>{0.3});
    CHECK(one.raw_betas == std::vector<double>{0.7});
    CHECK_THROWS(standard_unpack(std::vector<double>{1, 2, 3}));
    CHECK_THROWS(standard_unpack(std::vector<double>{}));
}

TEST_CASE("dimension ratio") {
    CHECK(dimension_ratio(4, 24) == 0.25);
    CHECK(dimension_ratio(4, 6) == 1.0);
    double prev = dimension_ratio(2, 1);
    for (int p = 2; p < 1000; p *= 2) {
        const double r = dimension_ratio(2, p);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev < 0.01);
}

TEST_CASE("resample") {
    Rng rng(4);
    const auto params = random_params(rng, 3);
    CHECK(resample(params, 17) == hfa_generate(params, 17));

    auto lam = HfaParams::zeros(1);
    lam.lambda_gamma = 0.8;
    lam.lambda_beta = 0.8;
    const auto r = ar_rescaled(lam, 4, 8);
    CHECK(std::abs(r.lambda_gamma - 0.894427190999916) < 1e-12);
    lam.delta_gamma0 = 1.0;
    ResampleOptions opts;
    opts.ar_rescale_from = 4;
    const auto s = resample(lam, 8, opts);
    CHECK(s.raw_gammas[1] == doctest::Approx(0.894427190999916));
}

TEST_CASE("resample: pure-Fourier schedules converge under refinement") {
    LotusInitConfig init;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto params = draw_initial_params(3, init, seed);
        params.delta_gamma0 = 0.0;
        params.delta_beta0 = 0.0;
        std::vector<double> dist;
        for (int p : {8, 16, 32}) {
            const auto coarse = resample(params, p);
            const auto fine = resample(params, 2 * p);
            double d = 0.0;
            for (int l = 0; l < p; ++l) {
                const double x = coarse.grid[l];
                d = std::max(d, std::abs(interp(fine.grid, fine.raw_gammas, x) - coarse.raw_gammas[l]));
                d = std::max(d, std::abs(interp(fine.grid, fine.raw_betas, x) - coarse.raw_betas[l]));
            }
            dist.push_back(d);
        }
        CHECK(dist[0] / dist[1] >= 1.5);
        CHECK(dist[1] / dist[2] >= 1.5);
    }
}

TEST_CASE("lipschitz certificate: zero parameters") {
    const auto r = lipschitz_certificate(HfaParams::zeros(2), 8);
    CHECK(r.c_spec() == 0.0);
    CHECK(r.c_ar() == 0.0);
    CHECK(r.max_violation == 0.0);
    CHECK(r.holds());
}

TEST_CASE("lipschitz certificate: constants") {
    auto p = HfaParams::zeros(2);
    p.a = {1.0, -0.5};
    p.b = {0.25, 0.0};
    p.weights = {0.5, 2.0};
    p.lambda_gamma = 0.5;
    p.lambda_beta = -0.5;
    p.delta_gamma0 = -0.4;
    p.delta_beta0 = 0.2;
    const auto r = lipschitz_certificate(p, 10);
    CHECK(r.c_spec_gamma == doctest::Approx(pi * (1 * 0.5 + 2 * 1.0)));
    CHECK(r.c_spec_beta == doctest::Approx(pi * 0.125));
    CHECK(r.c_ar_gamma == doctest::Approx(0.4 * 0.5));
    CHECK(r.c_ar_beta == doctest::Approx(0.2 * 1.5));
    CHECK(r.holds());
}

TEST_CASE("lipschitz certificate: bound holds for random draws") {
    Rng rng(2718);
    for (int t = 0; t < 1000; ++t) {
        const auto params = random_params(rng, 1 + static_cast<int>(rng.next_u64() % 5));
        for (int p : {4, 8, 16, 32, 64}) {
            const auto r = lipschitz_certificate(params, p);
            CHECK(r.max_violation <= 1e-12);
        }
    }
}

TEST_CASE("lipschitz certificate: errors and corrupted schedules") {
    auto p = HfaParams::zeros(1);
    p.lambda_gamma = 1.0;
    CHECK_THROWS_AS(lipschitz_certificate(p, 4), std::invalid_argument);
    p.lambda_gamma = -1.5;
    CHECK_THROWS_AS(lipschitz_certificate(p, 4), std::invalid_argument);

    Rng rng(9);
    const auto params = random_params(rng, 2);
    auto s = hfa_generate(params, 16);
    CHECK(certify_schedule(s, params).holds());
    s.raw_gammas[7] += 3.0;
    const auto r = certify_schedule(s, params);
    CHECK_FALSE(r.holds());
    CHECK((r.worst_layer == 7 || r.worst_layer == 8));
}

TEST_CASE("layer gaps shrink with depth for pure-Fourier schedules") {
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const auto params = random_params(rng, 1 + static_cast<int>(rng.next_u64() % 4), true);
        const double g16 = max_layer_gap(hfa_generate(params, 16));
        const double g64 = max_layer_gap(hfa_generate(params, 64));
        // The decay is first order in 1/p; the ratio approaches 1/4 from
        // above, so only the O(1/p) trend is asserted here.
        CHECK(g64 < 0.35 * g16);
    }
}

TEST_CASE("generated gamma sequences are ordered in time") {
    LotusInitConfig init;
    Rng rng(5);
    int unsorted = 0;
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 3);
        const int p = 4 + static_cast<int>(rng.next_u64() % 20);
        const auto s = hfa_generate(draw_initial_params(k, init, rng.next_u64()), p);
        auto sorted = s.raw_gammas;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != s.raw_gammas) {
            ++unsorted;
        }
    }
    CHECK(unsorted >= 0.95 * draws);
}

TEST_CASE("wrapped and raw angles agree inside [0, 2 pi)") {
    const auto s = standard_unpack(std::vector<double>{0.1, 6.0, 1.0, 2.0});
    CHECK(s.gammas == s.raw_gammas);
    CHECK(s.betas == s.raw_betas);
}

TEST_CASE("serialization") {
    Rng rng(8);
    const auto params = random_params(rng, 3);
    CHECK(hfa_params_from_json(to_json(params)) == params);

    std::ostringstream os;
    write_schedule_csv(os, hfa_generate(params, 3));
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "l,x_l,gamma,beta");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
    }
    CHECK(rows == 3);
}
