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
#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "json.hpp"

namespace lotus {

/// Hyperparameters of the hybrid Fourier-autoregressive schedule generator.
///
/// The flat layout (3K + 4 entries) is
///   a[0..K), b[0..K), lambda_gamma, lambda_beta, delta_gamma0, delta_beta0,
///   weights[0..K).
/// With all weights equal to 1 the generator reduces to the plain 2K + 4
/// Fourier-AR form.
struct HfaParams {
    std::vector<double> a;
    std::vector<double> b;
    double lambda_gamma = 0.0;
    double lambda_beta = 0.0;
    double delta_gamma0 = 0.0;
    double delta_beta0 = 0.0;
    std::vector<double> weights;

    /// Zero spectra and residuals, unit weights.
    static HfaParams zeros(int modes);
    static HfaParams from_flat(std::span<const double> flat);

    int modes() const { return static_cast<int>(a.size()); }
    std::vector<double> flatten() const;

    /// Throws std::invalid_argument for mismatched lengths, K < 1 or
    /// non-finite entries.
    void validate() const;

    friend bool operator==(const HfaParams &, const HfaParams &) = default;
};

constexpr int hfa_dimension(int modes) { return 3 * modes + 4; }

/// Realized layer angles. Raw angles are the generator output before
/// reduction modulo 2*pi; `gammas`/`betas` are the reduced values in [0, 2*pi).
struct Schedule {
    std::vector<double> grid;
    std::vector<double> gammas;
    std::vector<double> betas;
    std::vector<double> raw_gammas;
    std::vector<double> raw_betas;

    int depth() const { return static_cast<int>(raw_gammas.size()); }

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// Layer l (1-based) sits at x_l = (l - 1/2) / p.
std::vector<double> temporal_grid(int p);

/// Reduction into [0, 2*pi).
double wrap_angle(double angle);

Schedule hfa_generate(const HfaParams &params, int p);

/// Flat vector (gamma_1..gamma_p, beta_1..beta_p) of the raw angles.
std::vector<double> standard_pack(const Schedule &sched);
Schedule standard_unpack(std::span<const double> v);

/// (2K + 4) / (2p): size of the Fourier-AR search space relative to the
/// layer-wise one.
double dimension_ratio(int modes, int p);

struct ResampleOptions {
    /// When set, the AR decay rates become lambda^(p_old / p_new) so the
    /// residual envelope is fixed in normalized time instead of layer index.
    std::optional<int> ar_rescale_from;
};

HfaParams ar_rescaled(const HfaParams &params, int p_old, int p_new);
Schedule resample(const HfaParams &params, int p_new, const ResampleOptions &opts = {});

struct LipschitzReport {
    double c_spec_gamma = 0.0;
    double c_spec_beta = 0.0;
    double c_ar_gamma = 0.0;
    double c_ar_beta = 0.0;
    /// max over layers and both angle families of
    ///   |raw_{l+1} - raw_l| - C_spec / p - C_AR |lambda|^(l-1).
    /// Non-positive (up to 1e-12) when the bound holds; 0 for p = 1.
    double max_violation = 0.0;
    /// Layer (1-based) at which max_violation was attained, 0 if none.
    int worst_layer = 0;

    double c_spec() const { return c_spec_gamma > c_spec_beta ? c_spec_gamma : c_spec_beta; }
    double c_ar() const { return c_ar_gamma > c_ar_beta ? c_ar_gamma : c_ar_beta; }
    bool holds(double tol = 1e-12) const { return max_violation <= tol; }
};

/// Checks the layer-gap bound for the schedule the generator produces.
/// Requires |lambda| < 1 for both families.
LipschitzReport lipschitz_certificate(const HfaParams &params, int p);

/// Checks an arbitrary schedule against the constants implied by `params`.
/// This is what lipschitz_certificate() runs on hfa_generate(params, p); it
/// is exposed separately so externally modified schedules can be audited.
LipschitzReport certify_schedule(const Schedule &sched, const HfaParams &params);

/// Largest |raw_{l+1} - raw_l| over both families.
double max_layer_gap(const Schedule &sched);

nlohmann::json to_json(const HfaParams &params);
HfaParams hfa_params_from_json(const nlohmann::json &j);

/// CSV with header "l,x_l,gamma,beta" (wrapped angles, 17 significant digits).
void write_schedule_csv(std::ostream &out, const Schedule &sched);

} // namespace lotus
