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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "lotus/instance.hpp"

namespace lotus {

/// One optimization outcome. K (`modes`) is 0 for layer-wise baselines.
struct RunRecord {
    std::uint64_t seed = 0;          // run seed; all run randomness derives from it
    int seed_index = 0;              // position of the seed within its sweep cell
    std::uint64_t instance_seed = 0; // generator seed of the graph
    std::string optimizer;           // "lotus" or a baseline method id
    std::string method;              // classical minimizer that did the work
    int n_qubits = 0;
    int depth = 0;
    double p_graph = 0.0;
    int modes = 0;
    int shots = 0;                   // per-evaluation shots, 0 = exact
    double expectation = 0.0;        // final verification estimate
    double expectation_exact = 0.0;
    double total_weight = 0.0;
    int iterations = 0;
    int evaluations = 0;
    CutResult best_cut;
    std::optional<double> approx_ratio;
    std::vector<double> x_best;      // optimized vector (HFA flat or 2p angles)
    double wall_time = 0.0;          // seconds

    /// "lotus(K=2)" for LOTUS runs, the method id otherwise.
    std::string label() const;

    /// Records sharing a cell key were run on the same instance and depth
    /// with the same seed and are compared against each other.
    std::tuple<int, int, double, int> cell_key() const {
        return {n_qubits, depth, p_graph, seed_index};
    }
    std::string cell_id() const;
};

nlohmann::json to_json(const RunRecord &r);
RunRecord run_record_from_json(const nlohmann::json &j);

/// Field-by-field equality ignoring wall_time.
bool same_payload(const RunRecord &a, const RunRecord &b);

/// Newline-delimited JSON, one record per line.
std::vector<RunRecord> load_records(const std::filesystem::path &path);
void append_record(std::ostream &out, const RunRecord &r);

void write_records_csv(std::ostream &out, const std::vector<RunRecord> &records);

} // namespace lotus
