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
#include "lotus/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lotus/rng.hpp"

namespace lotus {

namespace {

double exact_at(const CostDiagonal &d, const HfaParams &params, int p, int p_source,
                const ResampleOptions &base) {
    ResampleOptions ro = base;
    if (ro.ar_rescale_from) {
        ro.ar_rescale_from = p_source;
    }
    return expectation_exact(evolve(d, resample(params, p, ro)), d);
}

} // namespace

TransferTable depth_transfer_experiment(const WeightedGraph &g, const HfaParams &params,
                                        int p_source, const std::vector<int> &depths,
                                        const TransferOptions &opts) {
    if (p_source < 1 || depths.empty()) {
        throw std::invalid_argument("depth_transfer_experiment: need p_source >= 1 and depths");
    }
    params.validate();
    const CostDiagonal d = build_cost_diagonal(g);

    TransferTable table;
    table.source_depth = p_source;
    table.source_expectation = expectation_exact(evolve(d, hfa_generate(params, p_source)), d);

    for (int p : depths) {
        if (p < 1) {
            throw std::invalid_argument("depth_transfer_experiment: depths must be >= 1");
        }
        TransferRow row;
        row.depth = p;
        row.expectation = exact_at(d, params, p, p_source, opts.resample);
        row.gap_to_source = std::abs(row.expectation - table.source_expectation);

        if (opts.hot_start && p != p_source) {
            HotStart hs;
            RunSettings cold = opts.settings;
            cold.seed = derive_seed(opts.settings.seed, {static_cast<std::uint64_t>(p), 1});
            const auto cold_run = lotus_optimize(g, p, params.modes(), opts.cold_init, cold);
            hs.cold_expectation = cold_run.record.expectation_exact;
            hs.cold_evaluations = cold_run.outcome.evaluations;

            HfaParams start = params;
            if (opts.resample.ar_rescale_from) {
                start = ar_rescaled(params, p_source, p);
            }
            RunSettings warm = opts.settings;
            warm.seed = derive_seed(opts.settings.seed, {static_cast<std::uint64_t>(p), 2});
            QaoaSimulator sim(g);
            std::vector<double> history;
            const auto out = lotus_descent(sim, p, start, warm, 0, &history);
            hs.warm_evaluations = out.evaluations;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < history.size(); ++i) {
                best = std::max(best, history[i]);
                if (!hs.warm_reached && best >= hs.cold_expectation - opts.match_tol) {
                    hs.warm_reached = true;
                    hs.warm_evaluations = static_cast<int>(i + 1);
                }
            }
            hs.warm_expectation = best;
            row.hot = hs;
        }
        table.rows.push_back(row);
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        table.successive_gaps.push_back(
            std::abs(table.rows[i].expectation - table.rows[i - 1].expectation));
    }
    return table;
}

} // namespace lotus
