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
#include "lotus/sweep.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "lotus/rng.hpp"

namespace lotus {

namespace {

constexpr std::uint64_t kInstanceTag = 0x1257;
constexpr std::uint64_t kTaskTag = 0x7A5C;

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <typename T>
void read_field(const nlohmann::json &j, const char *key, T &out) {
    if (j.contains(key)) {
        out = j.at(key).get<T>();
    }
}

std::string task_key(const std::string &cell, const std::string &label) { return cell + "|" + label; }

std::string cell_id_of(const SweepTask &t) {
    RunRecord r;
    r.n_qubits = t.n;
    r.depth = t.depth;
    r.p_graph = t.p_graph;
    r.seed_index = t.seed_index;
    return r.cell_id();
}

} // namespace

void SweepConfig::validate() const {
    if (qubits.empty() || depths.empty() || densities.empty() || modes.empty()) {
        throw std::invalid_argument("sweep config: qubits, depths, densities and modes must be non-empty");
    }
    if (seeds < 1) {
        throw std::invalid_argument("sweep config: seeds must be >= 1");
    }
    for (int n : qubits) {
        if (n < 2 || n > kDefaultQubitCap) {
            throw std::invalid_argument("sweep config: qubit counts must be in [2, 20]");
        }
    }
    for (int p : depths) {
        if (p < 1) {
            throw std::invalid_argument("sweep config: depths must be >= 1");
        }
    }
    for (double d : densities) {
        if (!(d > 0.0 && d <= 1.0)) {
            throw std::invalid_argument("sweep config: densities must be in (0, 1]");
        }
    }
    for (int k : modes) {
        if (k < 1) {
            throw std::invalid_argument("sweep config: modes must be >= 1");
        }
    }
    if (shots < 0) {
        throw std::invalid_argument("sweep config: shots must be >= 0");
    }
    const auto known = optimizer_ids();
    auto check_method = [&](const std::string &m) {
        if (std::find(known.begin(), known.end(), m) == known.end()) {
            throw std::invalid_argument("sweep config: unknown optimizer '" + m + "'");
        }
    };
    for (const auto &m : optimizers) {
        check_method(m);
    }
    check_method(lotus_method);
    init.validate();
}

nlohmann::json to_json(const SweepConfig &cfg) {
    return {
        {"qubits", cfg.qubits},
        {"depths", cfg.depths},
        {"densities", cfg.densities},
        {"modes", cfg.modes},
        {"seeds", cfg.seeds},
        {"base_seed", cfg.base_seed},
        {"optimizers", cfg.optimizers},
        {"lotus_method", cfg.lotus_method},
        {"shots", cfg.shots},
        {"budget", cfg.budget},
        {"init",
         {{"n_restarts", cfg.init.n_restarts},
          {"sigma_spectral", cfg.init.sigma_spectral},
          {"lambda_range", {cfg.init.lambda_lo, cfg.init.lambda_hi}},
          {"sigma_residual", cfg.init.sigma_residual},
          {"weight_mean", cfg.init.weight_mean},
          {"weight_sigma", cfg.init.weight_sigma}}},
        {"output", cfg.output},
    };
}

SweepConfig sweep_config_from_json(const nlohmann::json &j) {
    static const std::set<std::string> kKnown{"qubits",     "depths",       "densities", "modes",
                                              "seeds",      "base_seed",    "optimizers",
                                              "lotus_method", "shots",      "budget",    "init",
                                              "output"};
    for (const auto &[key, _] : j.items()) {
        if (!kKnown.count(key)) {
            throw std::invalid_argument("sweep config: unknown field '" + key + "'");
        }
    }
    SweepConfig cfg;
    read_field(j, "qubits", cfg.qubits);
    read_field(j, "depths", cfg.depths);
    read_field(j, "densities", cfg.densities);
    read_field(j, "modes", cfg.modes);
    read_field(j, "seeds", cfg.seeds);
    read_field(j, "base_seed", cfg.base_seed);
    read_field(j, "optimizers", cfg.optimizers);
    read_field(j, "lotus_method", cfg.lotus_method);
    read_field(j, "shots", cfg.shots);
    read_field(j, "budget", cfg.budget);
    read_field(j, "output", cfg.output);
    if (j.contains("init")) {
        const auto &in = j["init"];
        read_field(in, "n_restarts", cfg.init.n_restarts);
        read_field(in, "sigma_spectral", cfg.init.sigma_spectral);
        read_field(in, "sigma_residual", cfg.init.sigma_residual);
        read_field(in, "weight_mean", cfg.init.weight_mean);
        read_field(in, "weight_sigma", cfg.init.weight_sigma);
        if (in.contains("lambda_range")) {
            const auto r = in["lambda_range"].get<std::vector<double>>();
            if (r.size() != 2) {
                throw std::invalid_argument("sweep config: lambda_range must have two entries");
            }
            cfg.init.lambda_lo = r[0];
            cfg.init.lambda_hi = r[1];
        }
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config " + path.string());
    }
    return sweep_config_from_json(nlohmann::json::parse(in));
}

std::string SweepTask::label() const {
    return lotus ? "lotus(K=" + std::to_string(modes) + ")" : method;
}

std::vector<SweepTask> plan_sweep(const SweepConfig &cfg) {
    cfg.validate();
    std::vector<SweepTask> tasks;
    for (int n : cfg.qubits) {
        for (double density : cfg.densities) {
            for (int s = 0; s < cfg.seeds; ++s) {
                for (int p : cfg.depths) {
                    for (int k : cfg.modes) {
                        tasks.push_back({n, p, density, s, true, k, cfg.lotus_method});
                    }
                    for (const auto &m : cfg.optimizers) {
                        tasks.push_back({n, p, density, s, false, 0, m});
                    }
                }
            }
        }
    }
    return tasks;
}

std::uint64_t instance_seed(const SweepConfig &cfg, int n, double p_graph, int seed_index) {
    return derive_seed(cfg.base_seed, {kInstanceTag, static_cast<std::uint64_t>(n),
                                       std::bit_cast<std::uint64_t>(p_graph),
                                       static_cast<std::uint64_t>(seed_index)});
}

std::uint64_t task_seed(const SweepConfig &cfg, const SweepTask &task) {
    return derive_seed(instance_seed(cfg, task.n, task.p_graph, task.seed_index),
                       {kTaskTag, static_cast<std::uint64_t>(task.depth), fnv1a(task.label())});
}

RunRecord run_task(const SweepConfig &cfg, const SweepTask &task) {
    const auto g = gen_erdos_renyi(task.n, task.p_graph, instance_seed(cfg, task.n, task.p_graph, task.seed_index));
    RunSettings settings;
    settings.method = task.method;
    settings.shots = cfg.shots;
    settings.budget = cfg.budget;
    settings.seed = task_seed(cfg, task);
    RunRecord rec = task.lotus ? lotus_optimize(g, task.depth, task.modes, cfg.init, settings).record
                               : baseline_optimize(g, task.depth, settings).record;
    rec.seed_index = task.seed_index;
    return rec;
}

std::filesystem::path resume_marker(const std::filesystem::path &output) {
    auto marker = output;
    marker += ".inprogress";
    return marker;
}

int default_worker_count() {
    if (const char *env = std::getenv("LOTUS_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) {
                return w;
            }
        } catch (const std::exception &) {
        }
    }
    return 1;
}

std::vector<RunRecord> run_sweep(const SweepConfig &cfg, const SweepOptions &opts) {
    const auto tasks = plan_sweep(cfg);
    const std::size_t total = tasks.size();
    std::vector<std::optional<RunRecord>> results(total);

    const std::filesystem::path out_path = cfg.output;
    const auto marker = resume_marker(out_path);
    std::ofstream out;
    if (opts.write_files) {
        if (out_path.empty()) {
            throw std::invalid_argument("run_sweep: output path is empty");
        }
        const bool existing = std::filesystem::exists(out_path);
        if (opts.resume && existing) {
            std::map<std::string, RunRecord> have;
            for (auto &r : load_records(out_path)) {
                have.emplace(task_key(r.cell_id(), r.label()), std::move(r));
            }
            for (std::size_t i = 0; i < total; ++i) {
                const auto it = have.find(task_key(cell_id_of(tasks[i]), tasks[i].label()));
                if (it != have.end()) {
                    results[i] = it->second;
                }
            }
            out.open(out_path, std::ios::app);
        } else {
            if (existing && std::filesystem::exists(marker)) {
                throw std::runtime_error(out_path.string() +
                                         " holds an interrupted sweep; pass resume or delete it");
            }
            if (out_path.has_parent_path()) {
                std::filesystem::create_directories(out_path.parent_path());
            }
            out.open(out_path, std::ios::trunc);
        }
        if (!out) {
            throw std::runtime_error("cannot open " + out_path.string() + " for writing");
        }
        std::ofstream(marker) << "incomplete sweep; rerun with resume to continue\n";
    }

    std::vector<bool> preexisting(total);
    for (std::size_t i = 0; i < total; ++i) {
        preexisting[i] = results[i].has_value();
    }

    std::mutex mu;
    std::size_t flushed = 0;
    std::size_t done = 0;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr error;

    auto flush_ready = [&] {
        while (flushed < total && results[flushed]) {
            if (opts.write_files && !preexisting[flushed]) {
                append_record(out, *results[flushed]);
            }
            ++flushed;
        }
    };

    auto worker = [&] {
        for (;;) {
            if (stop.load()) {
                return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= total) {
                return;
            }
            if (preexisting[i]) {
                continue;
            }
            try {
                RunRecord rec = run_task(cfg, tasks[i]);
                std::lock_guard lock(mu);
                results[i] = std::move(rec);
                ++done;
                flush_ready();
                if (opts.progress) {
                    opts.progress(*results[i], done, total);
                }
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) {
                    error = std::current_exception();
                }
                stop.store(true);
                return;
            }
        }
    };

    {
        std::lock_guard lock(mu);
        flush_ready();
    }
    const int workers = std::max(1, opts.workers);
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }

    std::vector<RunRecord> records;
    records.reserve(total);
    for (auto &r : results) {
        records.push_back(std::move(*r));
    }
    if (opts.write_files) {
        out.close();
        auto csv_path = out_path;
        csv_path += ".csv";
        std::ofstream csv(csv_path);
        write_records_csv(csv, records);
        std::filesystem::remove(marker);
    }
    return records;
}

} // namespace lotus
