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
#include <vector>

#include "lotus/qaoa.hpp"
#include "lotus/schedule.hpp"

namespace lotus {

inline RunSettings exact_run_settings() {
    RunSettings s;
    s.shots = 0;
    return s;
}

struct TransferOptions {
    ResampleOptions resample;
    /// Also compare a warm start from the resampled point against a cold
    /// LOTUS run at each depth other than the source depth.
    bool hot_start = false;
    RunSettings settings = exact_run_settings();
    LotusInitConfig cold_init = single_start();

    static LotusInitConfig single_start() {
        LotusInitConfig c;
        c.n_restarts = 1;
        return c;
    }
    /// Warm start counts as matching once it is within this of the cold value.
    double match_tol = 1e-6;
};

struct HotStart {
    double cold_expectation = 0.0;
    int cold_evaluations = 0;
    double warm_expectation = 0.0;
    int warm_evaluations = 0;   // to reach the cold value, or all spent if never
    bool warm_reached = false;
};

struct TransferRow {
    int depth = 0;
    double expectation = 0.0;    // exact expectation of the resampled schedule
    double gap_to_source = 0.0;  // |C(depth) - C(p_source)|
    std::optional<HotStart> hot;
};

struct TransferTable {
    int source_depth = 0;
    double source_expectation = 0.0;
    std::vector<TransferRow> rows;
    /// |C(depths[i]) - C(depths[i + 1])| in the order given.
    std::vector<double> successive_gaps;
};

TransferTable depth_transfer_experiment(const WeightedGraph &g, const HfaParams &params,
                                        int p_source, const std::vector<int> &depths,
                                        const TransferOptions &opts = {});

} // namespace lotus
