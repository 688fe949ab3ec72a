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

// Reference implementations used only for verification. They share no code
// with the fast engine: Hamiltonians are built as explicit 2^n x 2^n matrices
// and exponentiated through a Hermitian eigendecomposition.

#include <Eigen/Dense>

#include "lotus/instance.hpp"
#include "lotus/schedule.hpp"

namespace lotus::oracle {

inline constexpr int kDenseMaxQubits = 8;

Eigen::MatrixXd cost_matrix(const WeightedGraph &g);
Eigen::MatrixXd mixer_matrix(int n);

/// exp(-i * theta * H) for real symmetric H.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXd &h, double theta);

Eigen::VectorXcd evolve_dense(const WeightedGraph &g, const Schedule &sched);
double expectation_dense(const WeightedGraph &g, const Eigen::VectorXcd &psi);

/// Maximum cut by explicit enumeration of all 2^n assignments, without the
/// node-0 symmetry reduction.
double maxcut_enumerate(const WeightedGraph &g);

} // namespace lotus::oracle
