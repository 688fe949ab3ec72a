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
#include "lotus/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lotus/rng.hpp"

namespace lotus {

namespace {

void check_cap(int n, int qubit_cap) {
    if (n < 1 || n > qubit_cap) {
        throw std::invalid_argument("qubit count " + std::to_string(n) +
                                    " outside [1, " + std::to_string(qubit_cap) + "]");
    }
}

void check_dims(const StateVector &s, const CostDiagonal &d) {
    if (s.dimension() != d.dimension()) {
        throw std::invalid_argument("state dimension " + std::to_string(s.dimension()) +
                                    " does not match cost diagonal dimension " +
                                    std::to_string(d.dimension()));
    }
}

} // namespace

CostDiagonal build_cost_diagonal(const WeightedGraph &g, int qubit_cap) {
    check_cap(g.n, qubit_cap);
    CostDiagonal d;
    d.n = g.n;
    const std::size_t dim = std::size_t{1} << g.n;
    d.values.assign(dim, 0.0);
    for (const auto &e : g.edges) {
        const Bits mi = Bits{1} << e.i;
        const Bits mj = Bits{1} << e.j;
        for (std::size_t z = 0; z < dim; ++z) {
            if (((z & mi) != 0) != ((z & mj) != 0)) {
                d.values[z] += e.w;
            }
        }
    }
    return d;
}

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty() || !std::has_single_bit(amps_.size())) {
        throw std::invalid_argument("StateVector: length must be a power of two");
    }
    n_ = std::countr_zero(amps_.size());
}

StateVector StateVector::plus_state(int n, int qubit_cap) {
    check_cap(n, qubit_cap);
    const std::size_t dim = std::size_t{1} << n;
    const double a = 1.0 / std::sqrt(static_cast<double>(dim));
    return StateVector(std::vector<Complex>(dim, Complex(a, 0.0)));
}

StateVector StateVector::basis_state(int n, Bits z) {
    check_cap(n, 63);
    const std::size_t dim = std::size_t{1} << n;
    if (z >= dim) {
        throw std::invalid_argument("basis_state: index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[z] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

void apply_cost_phase(StateVector &s, const CostDiagonal &d, double gamma) {
    check_dims(s, d);
    auto &amps = s.amps();
    for (std::size_t z = 0; z < amps.size(); ++z) {
        const double phi = -gamma * d.values[z];
        amps[z] *= Complex(std::cos(phi), std::sin(phi));
    }
}

void apply_mixer(StateVector &s, double beta) {
    const double c = std::cos(beta);
    const double sn = std::sin(beta);
    auto &amps = s.amps();
    const std::size_t dim = amps.size();
    for (int q = 0; q < s.qubits(); ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t block = 0; block < dim; block += 2 * stride) {
            for (std::size_t k = block; k < block + stride; ++k) {
                const Complex a0 = amps[k];
                const Complex a1 = amps[k + stride];
                // [c, -i s; -i s, c]
                amps[k] = Complex(c * a0.real() + sn * a1.imag(), c * a0.imag() - sn * a1.real());
                amps[k + stride] =
                    Complex(c * a1.real() + sn * a0.imag(), c * a1.imag() - sn * a0.real());
            }
        }
    }
}

StateVector evolve(const CostDiagonal &d, const Schedule &sched) {
    if (sched.depth() < 1 || sched.raw_betas.size() != sched.raw_gammas.size()) {
        throw std::invalid_argument("evolve: schedule must have p >= 1 matched layers");
    }
    StateVector s = StateVector::plus_state(d.n, 63);
    for (int l = 0; l < sched.depth(); ++l) {
        const auto i = static_cast<std::size_t>(l);
        apply_cost_phase(s, d, sched.raw_gammas[i]);
        apply_mixer(s, sched.raw_betas[i]);
    }
    return s;
}

StateVector evolve(const WeightedGraph &g, const Schedule &sched) {
    return evolve(build_cost_diagonal(g), sched);
}

double expectation_exact(const StateVector &s, const CostDiagonal &d) {
    check_dims(s, d);
    double e = 0.0;
    const auto &amps = s.amps();
    for (std::size_t z = 0; z < amps.size(); ++z) {
        e += std::norm(amps[z]) * d.values[z];
    }
    return e;
}

std::vector<Bits> sample_bitstrings(const StateVector &s, int shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("sampling requires shots >= 1");
    }
    const auto &amps = s.amps();
    std::vector<double> cdf(amps.size());
    double acc = 0.0;
    for (std::size_t z = 0; z < amps.size(); ++z) {
        acc += std::norm(amps[z]);
        cdf[z] = acc;
    }
    Rng rng(seed);
    std::vector<Bits> out(static_cast<std::size_t>(shots));
    for (auto &z : out) {
        const double u = rng.uniform_open() * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        // u * acc can round up to acc itself.
        if (it == cdf.end()) {
            it = std::prev(cdf.end());
        }
        z = static_cast<Bits>(it - cdf.begin());
    }
    return out;
}

SampledEstimate expectation_sampled(const StateVector &s, const CostDiagonal &d, int shots,
                                    std::uint64_t seed) {
    check_dims(s, d);
    const auto samples = sample_bitstrings(s, shots, seed);
    double sum = 0.0;
    for (Bits z : samples) {
        sum += d.values[z];
    }
    const double mean = sum / shots;
    double ss = 0.0;
    for (Bits z : samples) {
        const double dv = d.values[z] - mean;
        ss += dv * dv;
    }
    SampledEstimate r;
    r.estimate = mean;
    r.std_error = shots > 1 ? std::sqrt(ss / (shots - 1) / shots) : 0.0;
    return r;
}

Bits canonical_cut(Bits z, int n) { return (z & 1U) ? complement(z, n) : z; }

CutResult sample_best_bitstring(const StateVector &s, const WeightedGraph &g, int shots,
                                std::uint64_t seed) {
    if (static_cast<std::size_t>(1) << g.n != s.dimension()) {
        throw std::invalid_argument("sample_best_bitstring: graph and state sizes differ");
    }
    const auto samples = sample_bitstrings(s, shots, seed);
    CutResult best{g.n, 0, -1.0};
    for (Bits z : samples) {
        const Bits c = canonical_cut(z, g.n);
        const double v = cut_value(g, c);
        if (v > best.cut_value || (v == best.cut_value && c < best.bits)) {
            best.bits = c;
            best.cut_value = v;
        }
    }
    return best;
}

double fidelity(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    Complex overlap = 0.0;
    for (std::size_t z = 0; z < a.dimension(); ++z) {
        overlap += std::conj(a.amps()[z]) * b.amps()[z];
    }
    return std::abs(overlap);
}

QaoaSimulator::QaoaSimulator(const WeightedGraph &g, int qubit_cap)
    : graph_(g), diag_(build_cost_diagonal(g, qubit_cap)) {}

StateVector QaoaSimulator::prepare(const Schedule &sched) {
    ++executions_;
    return evolve(diag_, sched);
}

double QaoaSimulator::expectation(const Schedule &sched, int shots, std::uint64_t seed) {
    const StateVector s = prepare(sched);
    if (shots == 0) {
        return expectation_exact(s, diag_);
    }
    return expectation_sampled(s, diag_, shots, seed).estimate;
}

} // namespace lotus
