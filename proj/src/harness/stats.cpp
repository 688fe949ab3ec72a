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
#include "lotus/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace lotus {

namespace {

constexpr std::size_t kExactMaxPairs = 50;

} // namespace

double median(std::vector<double> v) {
    if (v.empty()) {
        throw std::invalid_argument("median of an empty sample");
    }
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("wilcoxon_signed_rank: samples must be paired");
    }
    std::vector<double> d;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - y[i];
        if (diff != 0.0) {
            d.push_back(diff);
        }
    }
    WilcoxonResult res;
    res.n_used = static_cast<int>(d.size());
    if (d.empty()) {
        return res;
    }

    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(d[a]) < std::abs(d[b]); });

    // Average ranks over runs of equal magnitude.
    std::vector<double> rank(n);
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(d[order[j + 1]]) == std::abs(d[order[i]])) {
            ++j;
        }
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            rank[order[k]] = avg;
        }
        const double t = static_cast<double>(j - i + 1);
        if (t > 1) {
            tie_term += t * t * t - t;
        }
        i = j + 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] > 0) {
            res.w_plus += rank[i];
        }
    }

    const double nn = static_cast<double>(n);
    if (n <= kExactMaxPairs) {
        // Sign-flip null distribution of the rank sum. Midranks are multiples
        // of 1/2, so the sum is tracked in half-rank units.
        std::vector<std::size_t> twice(n);
        std::size_t max_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            twice[i] = static_cast<std::size_t>(std::llround(2.0 * rank[i]));
            max_sum += twice[i];
        }
        std::vector<double> counts(max_sum + 1, 0.0);
        counts[0] = 1.0;
        std::size_t reach = 0;
        for (const std::size_t r : twice) {
            reach += r;
            for (std::size_t s = reach; s >= r; --s) {
                counts[s] += counts[s - r];
            }
        }
        const double total = std::ldexp(1.0, static_cast<int>(n));
        const auto w = static_cast<std::size_t>(std::llround(2.0 * res.w_plus));
        double lower = 0.0;
        for (std::size_t s = 0; s <= w; ++s) {
            lower += counts[s];
        }
        double upper = 0.0;
        for (std::size_t s = w; s <= max_sum; ++s) {
            upper += counts[s];
        }
        res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
        res.exact = true;
        return res;
    }

    const double mean = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        return res;
    }
    const double dev = std::max(0.0, std::abs(res.w_plus - mean) - 0.5);
    const double z = dev / std::sqrt(var);
    res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

SignificanceMatrix significance_matrix(const std::vector<RunRecord> &records, double alpha,
                                       int min_pairs) {
    std::map<std::string, std::map<std::tuple<int, int, double, int>, double>> by_label;
    for (const auto &r : records) {
        by_label[r.label()][r.cell_key()] = r.expectation;
    }
    SignificanceMatrix m;
    m.alpha = alpha;
    for (const auto &[label, _] : by_label) {
        m.labels.push_back(label);
    }
    const std::size_t k = m.labels.size();
    m.p_values.assign(k, std::vector<std::optional<double>>(k));
    m.pairs.assign(k, std::vector<int>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const auto &a = by_label[m.labels[i]];
            const auto &b = by_label[m.labels[j]];
            std::vector<double> xs;
            std::vector<double> ys;
            for (const auto &[key, v] : a) {
                const auto it = b.find(key);
                if (it != b.end()) {
                    xs.push_back(v);
                    ys.push_back(it->second);
                }
            }
            const int count = static_cast<int>(xs.size());
            m.pairs[i][j] = m.pairs[j][i] = count;
            if (count >= min_pairs) {
                const double p = wilcoxon_signed_rank(xs, ys).p_value;
                m.p_values[i][j] = m.p_values[j][i] = p;
            }
        }
    }
    return m;
}

} // namespace lotus
