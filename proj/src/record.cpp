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
#include "lotus/record.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace lotus {

std::string RunRecord::label() const {
    if (optimizer == "lotus") {
        return "lotus(K=" + std::to_string(modes) + ")";
    }
    return optimizer;
}

std::string RunRecord::cell_id() const {
    std::ostringstream os;
    os << "n" << n_qubits << "-p" << depth << "-d" << p_graph << "-s" << seed_index;
    return os.str();
}

nlohmann::json to_json(const RunRecord &r) {
    nlohmann::json j{
        {"seed", r.seed},
        {"seed_index", r.seed_index},
        {"instance_seed", r.instance_seed},
        {"optimizer", r.optimizer},
        {"method", r.method},
        {"n_qubits", r.n_qubits},
        {"depth", r.depth},
        {"p_graph", r.p_graph},
        {"K", r.modes},
        {"shots", r.shots},
        {"expectation", r.expectation},
        {"expectation_exact", r.expectation_exact},
        {"total_weight", r.total_weight},
        {"iterations", r.iterations},
        {"evaluations", r.evaluations},
        {"best_cut", {{"bitstring", r.best_cut.bitstring()}, {"cut_value", r.best_cut.cut_value}}},
        {"x_best", r.x_best},
        {"wall_time", r.wall_time},
    };
    j["approx_ratio"] = r.approx_ratio ? nlohmann::json(*r.approx_ratio) : nlohmann::json(nullptr);
    return j;
}

RunRecord run_record_from_json(const nlohmann::json &j) {
    RunRecord r;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.seed_index = j.at("seed_index").get<int>();
    r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
    r.optimizer = j.at("optimizer").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.n_qubits = j.at("n_qubits").get<int>();
    r.depth = j.at("depth").get<int>();
    r.p_graph = j.at("p_graph").get<double>();
    r.modes = j.at("K").get<int>();
    r.shots = j.at("shots").get<int>();
    r.expectation = j.at("expectation").get<double>();
    r.expectation_exact = j.at("expectation_exact").get<double>();
    r.total_weight = j.at("total_weight").get<double>();
    r.iterations = j.at("iterations").get<int>();
    r.evaluations = j.at("evaluations").get<int>();
    const auto &cut = j.at("best_cut");
    const auto bits = cut.at("bitstring").get<std::string>();
    r.best_cut = {static_cast<int>(bits.size()), parse_bitstring(bits),
                  cut.at("cut_value").get<double>()};
    if (!j.at("approx_ratio").is_null()) {
        r.approx_ratio = j["approx_ratio"].get<double>();
    }
    r.x_best = j.at("x_best").get<std::vector<double>>();
    r.wall_time = j.value("wall_time", 0.0);
    return r;
}

bool same_payload(const RunRecord &a, const RunRecord &b) {
    RunRecord x = a;
    RunRecord y = b;
    x.wall_time = 0.0;
    y.wall_time = 0.0;
    return to_json(x) == to_json(y);
}

std::vector<RunRecord> load_records(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open result file " + path.string());
    }
    std::vector<RunRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        try {
            out.push_back(run_record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception &e) {
            // A torn final line from an interrupted run is dropped.
            if (in.peek() == std::char_traits<char>::eof()) {
                break;
            }
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

void append_record(std::ostream &out, const RunRecord &r) {
    out << to_json(r).dump() << '\n';
    out.flush();
}

void write_records_csv(std::ostream &out, const std::vector<RunRecord> &records) {
    const auto old_precision = out.precision();
    out << std::setprecision(17);
    out << "label,optimizer,method,seed,seed_index,instance_seed,n_qubits,depth,p_graph,K,shots,"
           "expectation,expectation_exact,total_weight,iterations,evaluations,best_bitstring,"
           "best_cut,approx_ratio,wall_time\n";
    for (const auto &r : records) {
        out << r.label() << ',' << r.optimizer << ',' << r.method << ',' << r.seed << ','
            << r.seed_index << ',' << r.instance_seed << ',' << r.n_qubits << ',' << r.depth << ','
            << r.p_graph << ',' << r.modes << ',' << r.shots << ',' << r.expectation << ','
            << r.expectation_exact << ',' << r.total_weight << ',' << r.iterations << ','
            << r.evaluations << ',' << r.best_cut.bitstring() << ',' << r.best_cut.cut_value << ',';
        if (r.approx_ratio) {
            out << *r.approx_ratio;
        }
        out << ',' << r.wall_time << '\n';
    }
    out.precision(old_precision);
}

} // namespace lotus
