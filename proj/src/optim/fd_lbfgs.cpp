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
#include <cmath>
#include <deque>
#include <numeric>

#include "lotus/optim.hpp"

namespace lotus {

namespace {

constexpr std::size_t kMemory = 10;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 30;
constexpr double kCurvatureEps = 1e-12;

double dot(const std::vector<double> &a, const std::vector<double> &b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// Limited-memory BFGS on central-difference gradients, with bounds handled
/// by projecting each trial point into the box.
class FdLbfgs final : public Minimizer {
public:
    std::string id() const override { return "fd-lbfgs"; }

    void run(Session &session, std::vector<double> x) override {
        const auto d = static_cast<std::size_t>(session.dimension());
        const double h = session.options().fd_step;

        double fx = session.eval(x);
        auto g = finite_difference_gradient(session, x, h);

        std::deque<std::vector<double>> s_hist;
        std::deque<std::vector<double>> y_hist;
        std::vector<double> dir(d);
        std::vector<double> alpha(kMemory);
        bool first = true;

        for (;;) {
            // Two-loop recursion: dir = -H g.
            dir = g;
            const std::size_t m = s_hist.size();
            for (std::size_t k = m; k-- > 0;) {
                const double rho = 1.0 / dot(y_hist[k], s_hist[k]);
                alpha[k] = rho * dot(s_hist[k], dir);
                for (std::size_t i = 0; i < d; ++i) {
                    dir[i] -= alpha[k] * y_hist[k][i];
                }
            }
            if (m > 0) {
                const double scale = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
                for (auto &v : dir) {
                    v *= scale;
                }
            }
            for (std::size_t k = 0; k < m; ++k) {
                const double rho = 1.0 / dot(y_hist[k], s_hist[k]);
                const double beta = rho * dot(y_hist[k], dir);
                for (std::size_t i = 0; i < d; ++i) {
                    dir[i] += s_hist[k][i] * (alpha[k] - beta);
                }
            }
            for (auto &v : dir) {
                v = -v;
            }
            if (dot(dir, g) >= 0.0) {
                s_hist.clear();
                y_hist.clear();
                for (std::size_t i = 0; i < d; ++i) {
                    dir[i] = -g[i];
                }
            }

            const double gnorm = std::sqrt(dot(g, g));
            if (gnorm == 0.0) {
                session.mark_converged();
                session.end_iteration();
                return;
            }

            double t = first ? std::min(1.0, 1.0 / gnorm) : 1.0;
            std::vector<double> x_new;
            double f_new = fx;
            bool accepted = false;
            for (int bt = 0; bt < kMaxBacktracks; ++bt) {
                std::vector<double> trial(d);
                for (std::size_t i = 0; i < d; ++i) {
                    trial[i] = x[i] + t * dir[i];
                }
                trial = session.clamped(trial);
                double decrease = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    decrease += g[i] * (trial[i] - x[i]);
                }
                const double ft = session.eval(trial);
                if (ft <= fx + kArmijo * decrease && ft < fx) {
                    x_new = std::move(trial);
                    f_new = ft;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (!accepted) {
                // No descent along the projected direction: stationary up to
                // gradient accuracy.
                session.mark_converged();
                session.end_iteration();
                return;
            }

            auto g_new = finite_difference_gradient(session, x_new, h);
            std::vector<double> s(d);
            std::vector<double> y(d);
            for (std::size_t i = 0; i < d; ++i) {
                s[i] = x_new[i] - x[i];
                y[i] = g_new[i] - g[i];
            }
            if (dot(s, y) > kCurvatureEps) {
                s_hist.push_back(std::move(s));
                y_hist.push_back(std::move(y));
                if (s_hist.size() > kMemory) {
                    s_hist.pop_front();
                    y_hist.pop_front();
                }
            }
            const double drop = fx - f_new;
            x = std::move(x_new);
            fx = f_new;
            g = std::move(g_new);
            first = false;
            session.end_iteration();
            if (drop <= session.options().tol) {
                session.mark_converged();
                return;
            }
        }
    }
};

} // namespace

std::unique_ptr<Minimizer> make_fd_lbfgs() { return std::make_unique<FdLbfgs>(); }

} // namespace lotus
