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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lotus/engine.hpp"
#include "lotus/optim.hpp"
#include "lotus/record.hpp"
#include "lotus/schedule.hpp"

namespace lotus {

inline constexpr double kLambdaClamp = 0.999;
inline constexpr int kTrainingShots = 1024;
inline constexpr int kVerificationShots = 8192;

/// Random initialization of the LOTUS hyperparameters for each restart.
struct LotusInitConfig {
    int n_restarts = 5;
    double sigma_spectral = 0.5;  // N(0, sigma) for a_k, b_k
    double lambda_lo = 0.5;       // lambda ~ U(lambda_lo, lambda_hi)
    double lambda_hi = 0.95;
    double sigma_residual = 0.1;  // N(0, sigma) for delta_gamma0, delta_beta0
    double weight_mean = 1.0;     // W_k ~ N(weight_mean, weight_sigma)
    double weight_sigma = 0.1;

    void validate() const;
};

HfaParams draw_initial_params(int modes, const LotusInitConfig &init, std::uint64_t seed);

/// Protocol shared by the LOTUS and baseline loops.
struct RunSettings {
    std::string method = "nelder-mead";
    int shots = kTrainingShots;       // per objective evaluation; 0 = exact
    int budget = 2000;                // evaluations per restart
    std::optional<double> tol;        // default: 1e-6 exact, 1e-3 sampled
    std::optional<double> fd_step;    // default: 1e-5 exact, 0.1 sampled
    std::uint64_t seed = 0;

    /// Final readout. With exact training the verification value is the
    /// exact expectation; otherwise `verify_shots` samples are drawn.
    int verify_shots = kVerificationShots;
    int readout_shots = kVerificationShots;

    MinimizeOptions minimize_options() const;
};

struct LotusResult {
    HfaParams params;
    Schedule schedule;
    OptimizerOutcome outcome;                // best restart, evaluations summed over all
    std::vector<OptimizerOutcome> restarts;
    RunRecord record;
    std::uint64_t circuit_executions = 0;    // training circuits only
};

struct BaselineResult {
    Schedule schedule;
    OptimizerOutcome outcome;
    RunRecord record;
    std::uint64_t circuit_executions = 0;
};

/// Multi-start minimization of -E over the 3K + 4 HFA hyperparameters.
LotusResult lotus_optimize(const WeightedGraph &g, int p, int modes, const LotusInitConfig &init,
                           const RunSettings &settings);

/// Direct minimization of -E over the 2p layer angles, initialized
/// uniformly in [0, 2*pi)^(2p) and bounded to that box.
BaselineResult baseline_optimize(const WeightedGraph &g, int p, const RunSettings &settings);

/// Single LOTUS descent at depth p from a given starting point (used for warm
/// starts). The outcome's trace is the best-so-far per iteration.
OptimizerOutcome lotus_descent(QaoaSimulator &sim, int p, const HfaParams &start,
                               const RunSettings &settings, std::uint64_t stream,
                               std::vector<double> *eval_history = nullptr);

} // namespace lotus
