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

#include <span>
#include <string>
#include <vector>

#include "lotus/record.hpp"

namespace lotus {

inline constexpr double kDefaultScoreAlpha = 0.7;

struct ScoreRecord {
    double e_norm = 0.0;
    double i_norm = 0.0;
    double score = 0.0;
    double alpha = kDefaultScoreAlpha;
};

struct ScoreInput {
    double expectation = 0.0;
    double cost = 0.0;  // objective evaluations
};

/// Min-max normalizes expectation (higher is better) and cost (lower is
/// better) within one group. A group where max == min maps that axis to 1.
std::vector<ScoreRecord> score_group(std::span<const ScoreInput> group,
                                     double alpha = kDefaultScoreAlpha);

/// Scores every record against the others sharing its cell_key(). The result
/// is aligned with `records`.
std::vector<ScoreRecord> score_records(const std::vector<RunRecord> &records,
                                       double alpha = kDefaultScoreAlpha);

struct Improvement {
    std::string baseline;
    int cells = 0;
    /// Median over shared cells of (E_lotus - E_b) / |E_b| * 100.
    double expectation_pct = 0.0;
    /// Median over shared cells of (I_b - I_lotus) / I_b * 100, I = evaluations.
    double evaluation_pct = 0.0;
    /// Same, with optimizer-reported major iterations.
    double iteration_pct = 0.0;
};

/// Compares records labelled `lotus_label` against every other label that
/// shares at least one cell. Throws if no cell is shared.
std::vector<Improvement> improvement_summary(const std::vector<RunRecord> &records,
                                             const std::string &lotus_label);

/// First LOTUS label in the data, preferring the smallest K.
std::string default_lotus_label(const std::vector<RunRecord> &records);

} // namespace lotus
