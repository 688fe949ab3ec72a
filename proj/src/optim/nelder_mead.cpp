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
#include <algorithm>
#include <cmath>
#include <numeric>

#include "lotus/optim.hpp"

namespace lotus {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;
constexpr double kUnboundedEdge = 0.25;

class NelderMead final : public Minimizer {
public:
    std::string id() const override { return "nelder-mead"; }

    void run(Session &session, std::vector<double> x0) override {
        const auto d = static_cast<std::size_t>(session.dimension());
        const auto &bounds = session.bounds();

        std::vector<std::vector<double>> xs(d + 1, x0);
        for (std::size_t i = 0; i < d; ++i) {
            double edge = kUnboundedEdge;
            if (bounds && std::isfinite(bounds->width(i))) {
                edge = 0.1 * bounds->width(i);
            }
            auto &v = xs[i + 1];
            v[i] += edge;
            // Step inward when the vertex would leave the box.
            if (bounds && v[i] > bounds->upper[i]) {
                v[i] = x0[i] - edge;
            }
        }
        std::vector<double> fs(d + 1);
        for (std::size_t j = 0; j <= d; ++j) {
            fs[j] = session.eval(xs[j]);
        }

        std::vector<std::size_t> order(d + 1);
        std::vector<double> centroid(d);
        auto point = [&](double t, const std::vector<double> &from) {
            std::vector<double> p(d);
            for (std::size_t i = 0; i < d; ++i) {
                p[i] = centroid[i] + t * (from[i] - centroid[i]);
            }
            return session.clamped(p);
        };

        for (;;) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
            const std::size_t best = order.front();
            const std::size_t worst = order.back();
            const std::size_t second = order[d - 1];

            if (fs[worst] - fs[best] <= session.options().tol) {
                session.mark_converged();
                session.end_iteration();
                return;
            }

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t j = 0; j <= d; ++j) {
                if (j == worst) {
                    continue;
                }
                for (std::size_t i = 0; i < d; ++i) {
                    centroid[i] += xs[j][i];
                }
            }
            for (auto &c : centroid) {
                c /= static_cast<double>(d);
            }

            auto xr = point(-kReflect, xs[worst]);
            const double fr = session.eval(xr);
            if (fr < fs[best]) {
                auto xe = point(-kExpand, xs[worst]);
                const double fe = session.eval(xe);
                if (fe < fr) {
                    xs[worst] = std::move(xe);
                    fs[worst] = fe;
                } else {
                    xs[worst] = std::move(xr);
                    fs[worst] = fr;
                }
            } else if (fr < fs[second]) {
                xs[worst] = std::move(xr);
                fs[worst] = fr;
            } else {
                const bool outside = fr < fs[worst];
                auto xc = outside ? point(kContract, xr) : point(kContract, xs[worst]);
                const double fc = session.eval(xc);
                if (fc < (outside ? fr : fs[worst])) {
                    xs[worst] = std::move(xc);
                    fs[worst] = fc;
                } else {
                    for (std::size_t j = 0; j <= d; ++j) {
                        if (j == best) {
                            continue;
                        }
                        for (std::size_t i = 0; i < d; ++i) {
                            xs[j][i] = xs[best][i] + kShrink * (xs[j][i] - xs[best][i]);
                        }
                        fs[j] = session.eval(xs[j]);
                    }
                }
            }
            session.end_iteration();
        }
    }
};

} // namespace

std::unique_ptr<Minimizer> make_nelder_mead() { return std::make_unique<NelderMead>(); }

} // namespace lotus
