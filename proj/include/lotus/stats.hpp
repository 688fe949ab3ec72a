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
#include <span>
#include <string>
#include <vector>

#include "lotus/record.hpp"

namespace lotus {

double median(std::vector<double> v);

struct WilcoxonResult {
    int n_used = 0;          // non-zero differences
    double w_plus = 0.0;     // rank sum of positive differences
    double p_value = 1.0;    // two-sided
    bool exact = false;
};

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are discarded and tied magnitudes get midranks. Up to 50 non-zero
/// differences the p-value comes from the exact sign-flip distribution of
/// the rank sum; beyond that, the normal approximation with tie and
/// continuity corrections is used.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

struct SignificanceMatrix {
    std::vector<std::string> labels;
    /// p_values[i][j] is empty ("n/a") when fewer than `min_pairs` cells are
    /// shared by labels i and j.
    std::vector<std::vector<std::optional<double>>> p_values;
    std::vector<std::vector<int>> pairs;
    double alpha = 0.05;

    bool significant(std::size_t i, std::size_t j) const {
        return p_values[i][j] && *p_values[i][j] < alpha;
    }
};

/// Pairwise tests on per-cell final expectations for every label pair.
SignificanceMatrix significance_matrix(const std::vector<RunRecord> &records, double alpha = 0.05,
                                       int min_pairs = 5);

} // namespace lotus
