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
#include "lotus/score.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "lotus/stats.hpp"

namespace lotus {

namespace {

double normalized(double v, double lo, double hi) {
    if (hi == lo) {
        return 1.0;
    }
    return (v - lo) / (hi - lo);
}

using CellKey = std::tuple<int, int, double, int>;

} // namespace

std::vector<ScoreRecord> score_group(std::span<const ScoreInput> group, double alpha) {
    if (group.empty()) {
        throw std::invalid_argument("score_group: empty group");
    }
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("score_group: alpha must be in [0, 1]");
    }
    const auto [e_lo, e_hi] = std::minmax_element(
        group.begin(), group.end(),
        [](const ScoreInput &a, const ScoreInput &b) { return a.expectation < b.expectation; });
    const auto [c_lo, c_hi] = std::minmax_element(
        group.begin(), group.end(),
        [](const ScoreInput &a, const ScoreInput &b) { return a.cost < b.cost; });

    std::vector<ScoreRecord> out;
    out.reserve(group.size());
    for (const auto &in : group) {
        ScoreRecord s;
        s.alpha = alpha;
        s.e_norm = normalized(in.expectation, e_lo->expectation, e_hi->expectation);
        s.i_norm = 1.0 - normalized(in.cost, c_lo->cost, c_hi->cost);
        if (c_hi->cost == c_lo->cost) {
            s.i_norm = 1.0;
        }
        s.score = alpha * s.e_norm + (1.0 - alpha) * s.i_norm;
        out.push_back(s);
    }
    return out;
}

std::vector<ScoreRecord> score_records(const std::vector<RunRecord> &records, double alpha) {
    std::map<CellKey, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i) {
        groups[records[i].cell_key()].push_back(i);
    }
    std::vector<ScoreRecord> out(records.size());
    for (const auto &[key, idx] : groups) {
        std::vector<ScoreInput> in;
        in.reserve(idx.size());
        for (auto i : idx) {
            in.push_back({records[i].expectation, static_cast<double>(records[i].evaluations)});
        }
        const auto scored = score_group(in, alpha);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            out[idx[k]] = scored[k];
        }
    }
    return out;
}

std::string default_lotus_label(const std::vector<RunRecord> &records) {
    const RunRecord *best = nullptr;
    for (const auto &r : records) {
        if (r.optimizer == "lotus" && (!best || r.modes < best->modes)) {
            best = &r;
        }
    }
    if (!best) {
        throw std::invalid_argument("no LOTUS records in the data set");
    }
    return best->label();
}

std::vector<Improvement> improvement_summary(const std::vector<RunRecord> &records,
                                             const std::string &lotus_label) {
    std::map<CellKey, const RunRecord *> lotus;
    std::map<std::string, std::map<CellKey, const RunRecord *>> others;
    for (const auto &r : records) {
        if (r.label() == lotus_label) {
            lotus[r.cell_key()] = &r;
        } else if (r.optimizer != "lotus") {
            others[r.label()][r.cell_key()] = &r;
        }
    }

    std::vector<Improvement> out;
    for (const auto &[label, cells] : others) {
        std::vector<double> e_pct;
        std::vector<double> i_pct;
        std::vector<double> it_pct;
        for (const auto &[key, b] : cells) {
            const auto it = lotus.find(key);
            if (it == lotus.end()) {
                continue;
            }
            const RunRecord &l = *it->second;
            if (b->expectation != 0.0) {
                e_pct.push_back((l.expectation - b->expectation) / std::abs(b->expectation) * 100.0);
            }
            if (b->evaluations > 0) {
                i_pct.push_back(static_cast<double>(b->evaluations - l.evaluations) /
                                b->evaluations * 100.0);
            }
            if (b->iterations > 0) {
                it_pct.push_back(static_cast<double>(b->iterations - l.iterations) /
                                 b->iterations * 100.0);
            }
        }
        if (e_pct.empty() && i_pct.empty()) {
            continue;
        }
        Improvement imp;
        imp.baseline = label;
        imp.cells = static_cast<int>(std::max(e_pct.size(), i_pct.size()));
        imp.expectation_pct = e_pct.empty() ? 0.0 : median(e_pct);
        imp.evaluation_pct = i_pct.empty() ? 0.0 : median(i_pct);
        imp.iteration_pct = it_pct.empty() ? 0.0 : median(it_pct);
        out.push_back(imp);
    }
    if (out.empty()) {
        throw std::invalid_argument("improvement_summary: '" + lotus_label +
                                    "' shares no cells with any baseline");
    }
    return out;
}

} // namespace lotus
