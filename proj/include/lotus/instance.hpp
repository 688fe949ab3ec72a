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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace lotus {

/// Assignment of graph nodes to the two sides of a cut. Bit i of the integer
/// is the side of node i (little-endian, matching the statevector index).
using Bits = std::uint64_t;

struct Edge {
    int i = 0;
    int j = 0;
    double w = 0.0;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Weighted MaxCut instance. Edges satisfy 0 <= i < j < n, weights are
/// finite and strictly positive, and no (i, j) pair repeats.
struct WeightedGraph {
    int n = 0;
    std::vector<Edge> edges;

    /// Provenance, kept when the graph came from the generator.
    std::optional<std::uint64_t> seed;
    std::optional<double> p_graph;

    double total_weight() const;
    bool is_connected() const;

    /// Throws std::invalid_argument on any broken invariant. Connectivity is
    /// only enforced when `require_connected` is set.
    void validate(bool require_connected = false) const;

    friend bool operator==(const WeightedGraph &a, const WeightedGraph &b) {
        return a.n == b.n && a.edges == b.edges;
    }
};

struct CutResult {
    int n = 0;
    Bits bits = 0;
    double cut_value = 0.0;

    /// Character k is the side of node k, e.g. "010".
    std::string bitstring() const;
};

inline constexpr int kMaxConnectivityRetries = 1000;
inline constexpr int kBruteForceMaxNodes = 24;

/// Weighted G(n, p) with U(0, 1) weights (open interval). Disconnected draws
/// are redrawn with an incremented sub-seed, up to kMaxConnectivityRetries.
WeightedGraph gen_erdos_renyi(int n, double p_graph, std::uint64_t seed);

double cut_value(const WeightedGraph &g, Bits z);
/// One entry per node, each 0 or 1. Throws on a length mismatch.
double cut_value(const WeightedGraph &g, std::span<const std::uint8_t> z);
double cut_value(const WeightedGraph &g, const std::string &bitstring);

Bits complement(Bits z, int n);
Bits parse_bitstring(const std::string &s);

/// Exhaustive search over the 2^(n-1) cuts with node 0 on side 0. Ties go to
/// the lowest integer representative.
CutResult brute_force_maxcut(const WeightedGraph &g);

nlohmann::json to_json(const WeightedGraph &g);
WeightedGraph graph_from_json(const nlohmann::json &j);
void save_graph(const WeightedGraph &g, const std::filesystem::path &path);
WeightedGraph load_graph(const std::filesystem::path &path);

} // namespace lotus
