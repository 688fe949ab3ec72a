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
#include <vector>

#include "lotus/instance.hpp"
#include "lotus/rng.hpp"

namespace lotus::test {

inline WeightedGraph triangle() { return {3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}, {}, {}}; }
inline WeightedGraph single_edge(double w = 1.0) { return {2, {{0, 1, w}}, {}, {}}; }
inline WeightedGraph path3() { return {3, {{0, 1, 0.3}, {1, 2, 0.9}}, {}, {}}; }

/// Arbitrary (possibly disconnected) weighted graph for property tests.
inline WeightedGraph random_graph(Rng &rng, int n, double density = 0.6) {
    WeightedGraph g;
    g.n = n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.bernoulli(density)) {
                g.edges.push_back({i, j, rng.uniform_open()});
            }
        }
    }
    return g;
}

} // namespace lotus::test
