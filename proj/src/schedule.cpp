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
#include "lotus/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lotus {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

struct FamilyBound {
    double c_spec = 0.0;
    double c_ar = 0.0;
};

FamilyBound family_bound(std::span<const double> coeffs, std::span<const double> weights,
                         double lambda, double delta0) {
    FamilyBound out;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out.c_spec += static_cast<double>(k + 1) * std::abs(coeffs[k] * weights[k]);
    }
    out.c_spec *= std::numbers::pi;
    out.c_ar = std::abs(delta0) * std::abs(1.0 - lambda);
    return out;
}

} // namespace

HfaParams HfaParams::zeros(int modes) {
    if (modes < 1) {
        throw std::invalid_argument("HfaParams: K must be >= 1");
    }
    HfaParams p;
    const auto k = static_cast<std::size_t>(modes);
    p.a.assign(k, 0.0);
    p.b.assign(k, 0.0);
    p.weights.assign(k, 1.0);
    return p;
}

HfaParams HfaParams::from_flat(std::span<const double> flat) {
    if (flat.size() < 7 || (flat.size() - 4) % 3 != 0) {
        throw std::invalid_argument("HfaParams: flat length " + std::to_string(flat.size()) +
                                    " is not 3K + 4 for any K >= 1");
    }
    const std::size_t k = (flat.size() - 4) / 3;
    HfaParams p;
    auto it = flat.begin();
    p.a.assign(it, it + static_cast<std::ptrdiff_t>(k));
    it += static_cast<std::ptrdiff_t>(k);
    p.b.assign(it, it + static_cast<std::ptrdiff_t>(k));
    it += static_cast<std::ptrdiff_t>(k);
    p.lambda_gamma = *it++;
    p.lambda_beta = *it++;
    p.delta_gamma0 = *it++;
    p.delta_beta0 = *it++;
    p.weights.assign(it, it + static_cast<std::ptrdiff_t>(k));
    return p;
}

std::vector<double> HfaParams::flatten() const {
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(hfa_dimension(modes())));
    v.insert(v.end(), a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    v.push_back(lambda_gamma);
    v.push_back(lambda_beta);
    v.push_back(delta_gamma0);
    v.push_back(delta_beta0);
    v.insert(v.end(), weights.begin(), weights.end());
    return v;
}

void HfaParams::validate() const {
    if (a.empty()) {
        throw std::invalid_argument("HfaParams: K must be >= 1");
    }
    if (b.size() != a.size() || weights.size() != a.size()) {
        throw std::invalid_argument("HfaParams: a, b and weights must all have length K");
    }
    if (!all_finite(flatten())) {
        throw std::invalid_argument("HfaParams: non-finite entry");
    }
}

std::vector<double> temporal_grid(int p) {
    if (p < 1) {
        throw std::invalid_argument("temporal_grid: depth must be >= 1");
    }
    std::vector<double> x(static_cast<std::size_t>(p));
    for (int l = 1; l <= p; ++l) {
        x[static_cast<std::size_t>(l - 1)] = (l - 0.5) / p;
    }
    return x;
}

double wrap_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2*pi.
    return r >= kTwoPi ? 0.0 : r;
}

Schedule hfa_generate(const HfaParams &params, int p) {
    if (p < 1) {
        throw std::invalid_argument("hfa_generate: depth must be >= 1");
    }
    params.validate();
    const int modes = params.modes();

    Schedule s;
    s.grid = temporal_grid(p);
    s.raw_gammas.resize(static_cast<std::size_t>(p));
    s.raw_betas.resize(static_cast<std::size_t>(p));

    double dg = params.delta_gamma0;
    double db = params.delta_beta0;
    for (int l = 1; l <= p; ++l) {
        const auto idx = static_cast<std::size_t>(l - 1);
        const double x = s.grid[idx];
        double fg = 0.0;
        double fb = 0.0;
        for (int k = 1; k <= modes; ++k) {
            const auto kk = static_cast<std::size_t>(k - 1);
            const double arg = k * std::numbers::pi * x;
            fg += params.a[kk] * params.weights[kk] * std::sin(arg);
            fb += params.b[kk] * params.weights[kk] * std::cos(arg);
        }
        if (l > 1) {
            dg *= params.lambda_gamma;
            db *= params.lambda_beta;
        }
        s.raw_gammas[idx] = fg + dg;
        s.raw_betas[idx] = fb + db;
    }

    s.gammas.resize(s.raw_gammas.size());
    s.betas.resize(s.raw_betas.size());
    std::transform(s.raw_gammas.begin(), s.raw_gammas.end(), s.gammas.begin(), wrap_angle);
    std::transform(s.raw_betas.begin(), s.raw_betas.end(), s.betas.begin(), wrap_angle);
    return s;
}

std::vector<double> standard_pack(const Schedule &sched) {
    std::vector<double> v(sched.raw_gammas);
    v.insert(v.end(), sched.raw_betas.begin(), sched.raw_betas.end());
    return v;
}

Schedule standard_unpack(std::span<const double> v) {
    if (v.empty() || v.size() % 2 != 0) {
        throw std::invalid_argument("standard_unpack: length must be a positive even number, got " +
                                    std::to_string(v.size()));
    }
    const auto p = v.size() / 2;
    Schedule s;
    s.grid = temporal_grid(static_cast<int>(p));
    s.raw_gammas.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p));
    s.raw_betas.assign(v.begin() + static_cast<std::ptrdiff_t>(p), v.end());
    s.gammas.resize(p);
    s.betas.resize(p);
    std::transform(s.raw_gammas.begin(), s.raw_gammas.end(), s.gammas.begin(), wrap_angle);
    std::transform(s.raw_betas.begin(), s.raw_betas.end(), s.betas.begin(), wrap_angle);
    return s;
}

double dimension_ratio(int modes, int p) {
    if (modes < 1 || p < 1) {
        throw std::invalid_argument("dimension_ratio: K and p must be >= 1");
    }
    return static_cast<double>(2 * modes + 4) / static_cast<double>(2 * p);
}

HfaParams ar_rescaled(const HfaParams &params, int p_old, int p_new) {
    if (p_old < 1 || p_new < 1) {
        throw std::invalid_argument("ar_rescaled: depths must be >= 1");
    }
    HfaParams out = params;
    const double e = static_cast<double>(p_old) / static_cast<double>(p_new);
    // A negative lambda has no real fractional power; keep the sign and
    // rescale the magnitude.
    out.lambda_gamma = std::copysign(std::pow(std::abs(params.lambda_gamma), e), params.lambda_gamma);
    out.lambda_beta = std::copysign(std::pow(std::abs(params.lambda_beta), e), params.lambda_beta);
    return out;
}

Schedule resample(const HfaParams &params, int p_new, const ResampleOptions &opts) {
    if (opts.ar_rescale_from) {
        return hfa_generate(ar_rescaled(params, *opts.ar_rescale_from, p_new), p_new);
    }
    return hfa_generate(params, p_new);
}

LipschitzReport certify_schedule(const Schedule &sched, const HfaParams &params) {
    params.validate();
    if (!(std::abs(params.lambda_gamma) < 1.0) || !(std::abs(params.lambda_beta) < 1.0)) {
        throw std::invalid_argument("lipschitz_certificate: requires |lambda| < 1");
    }
    const auto g = family_bound(params.a, params.weights, params.lambda_gamma, params.delta_gamma0);
    const auto b = family_bound(params.b, params.weights, params.lambda_beta, params.delta_beta0);

    LipschitzReport r;
    r.c_spec_gamma = g.c_spec;
    r.c_spec_beta = b.c_spec;
    r.c_ar_gamma = g.c_ar;
    r.c_ar_beta = b.c_ar;

    const int p = sched.depth();
    if (p < 2) {
        return r;
    }
    r.max_violation = -std::numeric_limits<double>::infinity();
    double pow_g = 1.0; // |lambda_gamma|^(l-1)
    double pow_b = 1.0;
    for (int l = 1; l < p; ++l) {
        const auto i = static_cast<std::size_t>(l - 1);
        const double gap_g = std::abs(sched.raw_gammas[i + 1] - sched.raw_gammas[i]);
        const double gap_b = std::abs(sched.raw_betas[i + 1] - sched.raw_betas[i]);
        const double vg = gap_g - g.c_spec / p - g.c_ar * pow_g;
        const double vb = gap_b - b.c_spec / p - b.c_ar * pow_b;
        const double v = std::max(vg, vb);
        if (v > r.max_violation) {
            r.max_violation = v;
            r.worst_layer = l;
        }
        pow_g *= std::abs(params.lambda_gamma);
        pow_b *= std::abs(params.lambda_beta);
    }
    return r;
}

LipschitzReport lipschitz_certificate(const HfaParams &params, int p) {
    return certify_schedule(hfa_generate(params, p), params);
}

double max_layer_gap(const Schedule &sched) {
    double gap = 0.0;
    for (std::size_t i = 1; i < sched.raw_gammas.size(); ++i) {
        gap = std::max(gap, std::abs(sched.raw_gammas[i] - sched.raw_gammas[i - 1]));
        gap = std::max(gap, std::abs(sched.raw_betas[i] - sched.raw_betas[i - 1]));
    }
    return gap;
}

nlohmann::json to_json(const HfaParams &params) {
    return {
        {"K", params.modes()},
        {"a", params.a},
        {"b", params.b},
        {"lambda_gamma", params.lambda_gamma},
        {"lambda_beta", params.lambda_beta},
        {"delta_gamma0", params.delta_gamma0},
        {"delta_beta0", params.delta_beta0},
        {"weights", params.weights},
    };
}

HfaParams hfa_params_from_json(const nlohmann::json &j) {
    HfaParams p;
    p.a = j.at("a").get<std::vector<double>>();
    p.b = j.at("b").get<std::vector<double>>();
    p.lambda_gamma = j.at("lambda_gamma").get<double>();
    p.lambda_beta = j.at("lambda_beta").get<double>();
    p.delta_gamma0 = j.at("delta_gamma0").get<double>();
    p.delta_beta0 = j.at("delta_beta0").get<double>();
    p.weights = j.at("weights").get<std::vector<double>>();
    p.validate();
    return p;
}

void write_schedule_csv(std::ostream &out, const Schedule &sched) {
    const auto old_precision = out.precision();
    out << "l,x_l,gamma,beta\n" << std::setprecision(17);
    for (int l = 1; l <= sched.depth(); ++l) {
        const auto i = static_cast<std::size_t>(l - 1);
        out << l << ',' << sched.grid[i] << ',' << sched.gammas[i] << ',' << sched.betas[i] << '\n';
    }
    out.precision(old_precision);
}

} // namespace lotus
