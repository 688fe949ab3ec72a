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
#include "lotus/instance.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lotus/rng.hpp"

namespace lotus {

double WeightedGraph::total_weight() const {
    double sum = 0.0;
    for (const auto &e : edges) {
        sum += e.w;
    }
    return sum;
}

bool WeightedGraph::is_connected() const {
    if (n <= 1) {
        return true;
    }
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    int components = n;
    for (const auto &e : edges) {
        const int a = find(e.i);
        const int b = find(e.j);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

void WeightedGraph::validate(bool require_connected) const {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("graph: node count must be in [1, 63], got " +
                                    std::to_string(n));
    }
    std::set<std::pair<int, int>> seen;
    for (const auto &e : edges) {
        if (!(0 <= e.i && e.i < e.j && e.j < n)) {
            throw std::invalid_argument("graph: edge (" + std::to_string(e.i) + ", " +
                                        std::to_string(e.j) +
                                        ") violates 0 <= i < j < n");
        }
        if (!std::isfinite(e.w) || e.w <= 0.0) {
            throw std::invalid_argument("graph: edge weights must be finite and > 0");
        }
        if (!seen.emplace(e.i, e.j).second) {
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(e.i) +
                                        ", " + std::to_string(e.j) + ")");
        }
    }
    if (require_connected && !is_connected()) {
        throw std::invalid_argument("graph: not connected");
    }
}

std::string CutResult::bitstring() const {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int k = 0; k < n; ++k) {
        if ((bits >> k) & 1U) {
            s[static_cast<std::size_t>(k)] = '1';
        }
    }
    return s;
}

WeightedGraph gen_erdos_renyi(int n, double p_graph, std::uint64_t seed) {
    if (n < 2 || n > 63) {
        throw std::invalid_argument("gen_erdos_renyi: n must be in [2, 63]");
    }
    if (!(p_graph > 0.0 && p_graph <= 1.0)) {
        throw std::invalid_argument("gen_erdos_renyi: p_graph must be in (0, 1]");
    }
    for (int attempt = 0; attempt < kMaxConnectivityRetries; ++attempt) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
        WeightedGraph g;
        g.n = n;
        g.seed = seed;
        g.p_graph = p_graph;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                // Always draw both variates so the stream layout is fixed.
                const bool keep = rng.bernoulli(p_graph) || p_graph == 1.0;
                const double w = rng.uniform_open();
                if (keep) {
                    g.edges.push_back({i, j, w});
                }
            }
        }
        if (g.is_connected()) {
            return g;
        }
    }
    throw std::runtime_error("gen_erdos_renyi: no connected graph after " +
                             std::to_string(kMaxConnectivityRetries) +
                             " draws; p_graph is too low for n = " + std::to_string(n));
}

double cut_value(const WeightedGraph &g, Bits z) {
    double sum = 0.0;
    for (const auto &e : g.edges) {
        if (((z >> e.i) ^ (z >> e.j)) & 1U) {
            sum += e.w;
        }
    }
    return sum;
}

double cut_value(const WeightedGraph &g, std::span<const std::uint8_t> z) {
    if (z.size() != static_cast<std::size_t>(g.n)) {
        throw std::invalid_argument("cut_value: bitstring length " + std::to_string(z.size()) +
                                    " does not match n = " + std::to_string(g.n));
    }
    Bits bits = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (z[k] > 1) {
            throw std::invalid_argument("cut_value: bitstring entries must be 0 or 1");
        }
        bits |= static_cast<Bits>(z[k]) << k;
    }
    return cut_value(g, bits);
}

double cut_value(const WeightedGraph &g, const std::string &bitstring) {
    if (bitstring.size() != static_cast<std::size_t>(g.n)) {
        throw std::invalid_argument("cut_value: bitstring length " +
                                    std::to_string(bitstring.size()) +
                                    " does not match n = " + std::to_string(g.n));
    }
    return cut_value(g, parse_bitstring(bitstring));
}

Bits complement(Bits z, int n) {
    const Bits mask = n >= 64 ? ~Bits{0} : ((Bits{1} << n) - 1);
    return ~z & mask;
}

Bits parse_bitstring(const std::string &s) {
    if (s.size() > 63) {
        throw std::invalid_argument("bitstring longer than 63 characters");
    }
    Bits bits = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '1') {
            bits |= Bits{1} << k;
        } else if (s[k] != '0') {
            throw std::invalid_argument("bitstring may only contain '0' and '1'");
        }
    }
    return bits;
}

CutResult brute_force_maxcut(const WeightedGraph &g) {
    if (g.n > kBruteForceMaxNodes) {
        throw std::invalid_argument("brute_force_maxcut: n = " + std::to_string(g.n) +
                                    " exceeds the enumeration cap of " +
                                    std::to_string(kBruteForceMaxNodes));
    }
    CutResult best{g.n, 0, cut_value(g, Bits{0})};
    const Bits end = Bits{1} << g.n;
    // Even integers only: bit 0 (node 0) stays on side 0.
    for (Bits z = 2; z < end; z += 2) {
        const double c = cut_value(g, z);
        if (c > best.cut_value) {
            best.bits = z;
            best.cut_value = c;
        }
    }
    return best;
}

nlohmann::json to_json(const WeightedGraph &g) {
    nlohmann::json j;
    j["n"] = g.n;
    auto edges = nlohmann::json::array();
    for (const auto &e : g.edges) {
        edges.push_back({e.i, e.j, e.w});
    }
    j["edges"] = std::move(edges);
    if (g.seed) {
        j["seed"] = *g.seed;
    }
    if (g.p_graph) {
        j["p_graph"] = *g.p_graph;
    }
    return j;
}

WeightedGraph graph_from_json(const nlohmann::json &j) {
    WeightedGraph g;
    g.n = j.at("n").get<int>();
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3) {
            throw std::invalid_argument("graph json: each edge must be [i, j, w]");
        }
        g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    if (j.contains("seed")) {
        g.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("p_graph")) {
        g.p_graph = j["p_graph"].get<double>();
    }
    g.validate(false);
    return g;
}

void save_graph(const WeightedGraph &g, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << to_json(g).dump(2) << '\n';
}

WeightedGraph load_graph(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return graph_from_json(nlohmann::json::parse(in));
}

} // namespace lotus
