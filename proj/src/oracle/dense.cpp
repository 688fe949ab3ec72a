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
#include "lotus/oracle/dense.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace lotus::oracle {

namespace {

void check_size(int n) {
    if (n < 1 || n > kDenseMaxQubits) {
        throw std::invalid_argument("dense oracle supports 1..8 qubits");
    }
}

int bit(long z, int k) { return static_cast<int>((z >> k) & 1L); }

} // namespace

Eigen::MatrixXd cost_matrix(const WeightedGraph &g) {
    check_size(g.n);
    const long dim = 1L << g.n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    // Each edge contributes w * (1 - Z_i Z_j) / 2.
    for (const auto &e : g.edges) {
        for (long z = 0; z < dim; ++z) {
            const double zi = bit(z, e.i) ? -1.0 : 1.0;
            const double zj = bit(z, e.j) ? -1.0 : 1.0;
            h(z, z) += e.w * 0.5 * (1.0 - zi * zj);
        }
    }
    return h;
}

Eigen::MatrixXd mixer_matrix(int n) {
    check_size(n);
    const long dim = 1L << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        for (long z = 0; z < dim; ++z) {
            h(z ^ (1L << q), z) += 1.0;
        }
    }
    return h;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXd &h, double theta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
    Eigen::VectorXcd phases(h.rows());
    for (long k = 0; k < h.rows(); ++k) {
        phases(k) = std::exp(std::complex<double>(0.0, -theta * es.eigenvalues()(k)));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

Eigen::VectorXcd evolve_dense(const WeightedGraph &g, const Schedule &sched) {
    const Eigen::MatrixXd hc = cost_matrix(g);
    const Eigen::MatrixXd hb = mixer_matrix(g.n);
    const long dim = hc.rows();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
    for (int l = 0; l < sched.depth(); ++l) {
        const auto i = static_cast<std::size_t>(l);
        psi = expm_hermitian(hc, sched.raw_gammas[i]) * psi;
        psi = expm_hermitian(hb, sched.raw_betas[i]) * psi;
    }
    return psi;
}

double expectation_dense(const WeightedGraph &g, const Eigen::VectorXcd &psi) {
    const Eigen::MatrixXcd hc = cost_matrix(g).cast<std::complex<double>>();
    return (psi.adjoint() * hc * psi)(0, 0).real();
}

double maxcut_enumerate(const WeightedGraph &g) {
    if (g.n > 20) {
        throw std::invalid_argument("maxcut_enumerate: n too large");
    }
    double best = 0.0;
    for (long z = 0; z < (1L << g.n); ++z) {
        double c = 0.0;
        for (const auto &e : g.edges) {
            if (bit(z, e.i) != bit(z, e.j)) {
                c += e.w;
            }
        }
        best = std::max(best, c);
    }
    return best;
}

} // namespace lotus::oracle
