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

#include <complex>
#include <cstdint>
#include <vector>

#include "lotus/instance.hpp"
#include "lotus/schedule.hpp"

namespace lotus {

using Complex = std::complex<double>;

inline constexpr int kDefaultQubitCap = 20;

/// Diagonal of the MaxCut cost Hamiltonian: values[z] = cut_value(g, z).
struct CostDiagonal {
    int n = 0;
    std::vector<double> values;

    std::size_t dimension() const { return values.size(); }
};

CostDiagonal build_cost_diagonal(const WeightedGraph &g, int qubit_cap = kDefaultQubitCap);

/// 2^n amplitudes; index bit i is qubit (node) i.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amps);

    static StateVector plus_state(int n, int qubit_cap = kDefaultQubitCap);
    static StateVector basis_state(int n, Bits z);

    int qubits() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }
    std::vector<Complex> &amps() { return amps_; }
    const std::vector<Complex> &amps() const { return amps_; }

    double norm_squared() const;
    double probability(Bits z) const { return std::norm(amps_[z]); }

private:
    int n_ = 0;
    std::vector<Complex> amps_;
};

/// amps[z] *= exp(-i * gamma * values[z]).
void apply_cost_phase(StateVector &s, const CostDiagonal &d, double gamma);

/// exp(-i * beta * sum_q X_q), applied as one (cos b, -i sin b) rotation per qubit.
void apply_mixer(StateVector &s, double beta);

/// |+>^n followed by cost/mixer layers l = 1..p with the raw schedule angles.
StateVector evolve(const CostDiagonal &d, const Schedule &sched);
StateVector evolve(const WeightedGraph &g, const Schedule &sched);

double expectation_exact(const StateVector &s, const CostDiagonal &d);

struct SampledEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Draws `shots` computational-basis samples from |amps|^2.
std::vector<Bits> sample_bitstrings(const StateVector &s, int shots, std::uint64_t seed);

SampledEstimate expectation_sampled(const StateVector &s, const CostDiagonal &d, int shots,
                                    std::uint64_t seed);

/// Representative of {z, complement(z)} with node 0 on side 0.
Bits canonical_cut(Bits z, int n);

/// Best cut among `shots` samples, returned in canonical form. Ties go to the
/// lowest canonical integer.
CutResult sample_best_bitstring(const StateVector &s, const WeightedGraph &g, int shots,
                                std::uint64_t seed);

/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector &a, const StateVector &b);

/// Cost evaluator bound to one graph. Counts every circuit it simulates so
/// optimizer-side evaluation accounting can be cross-checked.
class QaoaSimulator {
public:
    explicit QaoaSimulator(const WeightedGraph &g, int qubit_cap = kDefaultQubitCap);

    const WeightedGraph &graph() const { return graph_; }
    const CostDiagonal &diagonal() const { return diag_; }

    StateVector prepare(const Schedule &sched);

    /// Exact when shots == 0, otherwise a shot-sampled estimate.
    double expectation(const Schedule &sched, int shots, std::uint64_t seed);

    std::uint64_t circuit_executions() const { return executions_; }

private:
    WeightedGraph graph_;
    CostDiagonal diag_;
    std::uint64_t executions_ = 0;
};

} // namespace lotus
