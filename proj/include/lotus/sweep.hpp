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
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lotus/qaoa.hpp"
#include "lotus/record.hpp"

namespace lotus {

/// Benchmark grid. Every (n, p, density, seed index) cell gets one instance;
/// LOTUS runs once per K and every baseline runs on that same instance.
struct SweepConfig {
    std::vector<int> qubits{8, 12};
    std::vector<int> depths{4, 8, 16, 24};
    std::vector<double> densities{0.5, 0.75, 1.0};
    std::vector<int> modes{2, 3, 4};
    int seeds = 5;
    std::uint64_t base_seed = 0;
    std::vector<std::string> optimizers{"nelder-mead", "powell", "fd-lbfgs"};
    std::string lotus_method = "nelder-mead";
    int shots = kTrainingShots;  // 0 = exact mode
    int budget = 2000;
    LotusInitConfig init;
    std::string output = "results.jsonl";

    void validate() const;
};

nlohmann::json to_json(const SweepConfig &cfg);
/// Missing fields keep their defaults; unknown fields are rejected.
SweepConfig sweep_config_from_json(const nlohmann::json &j);
SweepConfig load_sweep_config(const std::filesystem::path &path);

struct SweepTask {
    int n = 0;
    int depth = 0;
    double p_graph = 0.0;
    int seed_index = 0;
    bool lotus = false;
    int modes = 0;           // LOTUS only
    std::string method;      // classical minimizer

    std::string label() const;
};

/// Task list in the fixed order used for the result file.
std::vector<SweepTask> plan_sweep(const SweepConfig &cfg);

std::uint64_t instance_seed(const SweepConfig &cfg, int n, double p_graph, int seed_index);
std::uint64_t task_seed(const SweepConfig &cfg, const SweepTask &task);

RunRecord run_task(const SweepConfig &cfg, const SweepTask &task);

struct SweepOptions {
    int workers = 1;
    /// Keep records already in `cfg.output` and only run the missing tasks.
    bool resume = false;
    /// Write `cfg.output` (NDJSON) and `<output>.csv`. When false the sweep is
    /// purely in-memory.
    bool write_files = true;
    std::function<void(const RunRecord &, std::size_t done, std::size_t total)> progress;
};

/// Marker file present while a sweep writing `output` is incomplete.
std::filesystem::path resume_marker(const std::filesystem::path &output);

/// Runs the sweep on a pool of `workers` threads. Records are appended to the
/// output in plan order as soon as all earlier tasks have finished, so the
/// file content does not depend on the worker count. On failure, completed
/// records stay on disk alongside the resume marker and the error propagates.
std::vector<RunRecord> run_sweep(const SweepConfig &cfg, const SweepOptions &opts = {});

/// Worker count from LOTUS_WORKERS, else 1.
int default_worker_count();

} // namespace lotus
