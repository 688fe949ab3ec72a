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
#include <limits>
#include <utility>

#include "lotus/optim.hpp"

namespace lotus {

namespace {

constexpr double kGolden = 1.618033988749895;
constexpr double kCGold = 0.3819660112501051;
constexpr double kTiny = 1e-20;
constexpr double kLineXTol = 1e-4;
constexpr int kBrentMaxIter = 100;

struct LineResult {
    double t = 0.0;
    double f = 0.0;
};

/// 1-D function along x + t * dir.
class Line {
public:
    Line(Session &s, const std::vector<double> &x, const std::vector<double> &dir)
        : s_(s), x_(x), dir_(dir), buf_(x.size()) {}

    double operator()(double t) {
        for (std::size_t i = 0; i < x_.size(); ++i) {
            buf_[i] = x_[i] + t * dir_[i];
        }
        return s_.eval(buf_);
    }

private:
    Session &s_;
    const std::vector<double> &x_;
    const std::vector<double> &dir_;
    std::vector<double> buf_;
};

LineResult brent(Line &f, double lo, double hi, double x0, double f0);

/// Feasible step interval [lo, hi] for x + t * dir inside the bounds.
std::pair<double, double> feasible_steps(const std::optional<Bounds> &bounds,
                                         const std::vector<double> &x,
                                         const std::vector<double> &dir) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    if (!bounds) {
        return {lo, hi};
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (dir[i] == 0.0) {
            continue;
        }
        const double a = (bounds->lower[i] - x[i]) / dir[i];
        const double b = (bounds->upper[i] - x[i]) / dir[i];
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
    }
    return {std::min(lo, 0.0), std::max(hi, 0.0)};
}

/// Bounded Brent when the feasible segment is finite, otherwise downhill
/// bracketing with parabolic extrapolation followed by Brent.
LineResult line_minimize(Line &f, double f0, std::pair<double, double> steps) {
    if (std::isfinite(steps.first) && std::isfinite(steps.second)) {
        if (steps.second - steps.first <= 0.0) {
            return {0.0, f0};
        }
        return brent(f, steps.first, steps.second, 0.0, f0);
    }
    double ax = 0.0;
    double bx = 1.0;
    double fa = f0;
    double fb = f(bx);
    if (fb > fa) {
        std::swap(ax, bx);
        std::swap(fa, fb);
    }
    double cx = bx + kGolden * (bx - ax);
    double fc = f(cx);
    while (fb > fc) {
        const double r = (bx - ax) * (fb - fc);
        const double q = (bx - cx) * (fb - fa);
        const double denom = 2.0 * std::copysign(std::max(std::abs(q - r), kTiny), q - r);
        double u = bx - ((bx - cx) * q - (bx - ax) * r) / denom;
        const double ulim = bx + 100.0 * (cx - bx);
        double fu = 0.0;
        if ((bx - u) * (u - cx) > 0.0) {
            fu = f(u);
            if (fu < fc) {
                ax = bx;
                bx = u;
                fa = fb;
                fb = fu;
                break;
            }
            if (fu > fb) {
                cx = u;
                fc = fu;
                break;
            }
            u = cx + kGolden * (cx - bx);
            fu = f(u);
        } else if ((cx - u) * (u - ulim) > 0.0) {
            fu = f(u);
            if (fu < fc) {
                bx = cx;
                cx = u;
                u = cx + kGolden * (cx - bx);
                fb = fc;
                fc = fu;
                fu = f(u);
            }
        } else if ((u - ulim) * (ulim - cx) >= 0.0) {
            u = ulim;
            fu = f(u);
        } else {
            u = cx + kGolden * (cx - bx);
            fu = f(u);
        }
        ax = bx;
        bx = cx;
        cx = u;
        fa = fb;
        fb = fc;
        fc = fu;
    }

    const auto r = brent(f, std::min(ax, cx), std::max(ax, cx), bx, fb);
    if (r.f > f0) {
        return {0.0, f0};
    }
    return r;
}

/// Brent's method on [lo, hi] starting from x0 with known value f0.
LineResult brent(Line &f, double lo, double hi, double x0, double f0) {
    double a = lo;
    double b = hi;
    double x = x0;
    double w = x0;
    double v = x0;
    double fx = f0;
    double fw = f0;
    double fv = f0;
    double d = 0.0;
    double e = 0.0;
    for (int iter = 0; iter < kBrentMaxIter; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = kLineXTol * std::abs(x) + 1e-10;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) {
            break;
        }
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double pp = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) {
                pp = -pp;
            }
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(pp) >= std::abs(0.5 * q * etemp) || pp <= q * (a - x) ||
                pp >= q * (b - x)) {
                e = (x >= xm) ? a - x : b - x;
                d = kCGold * e;
            } else {
                d = pp / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) {
                    d = std::copysign(tol1, xm - x);
                }
            }
        } else {
            e = (x >= xm) ? a - x : b - x;
            d = kCGold * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
        const double fu = f(u);
        if (fu <= fx) {
            if (u >= x) {
                a = x;
            } else {
                b = x;
            }
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            if (u < x) {
                a = u;
            } else {
                b = u;
            }
            if (fu <= fw || w == x) {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    return {x, fx};
}

/// Powell's conjugate-direction method. One major iteration is a sweep of
/// line searches over the current direction set plus the extrapolation step.
class Powell final : public Minimizer {
public:
    std::string id() const override { return "powell"; }

    void run(Session &session, std::vector<double> x) override {
        const auto d = static_cast<std::size_t>(session.dimension());
        std::vector<std::vector<double>> dirs(d, std::vector<double>(d, 0.0));
        for (std::size_t i = 0; i < d; ++i) {
            dirs[i][i] = 1.0;
        }
        double fx = session.eval(x);
        std::vector<double> step(d);

        for (;;) {
            const std::vector<double> x_start = x;
            const double f_start = fx;
            std::size_t big_index = 0;
            double big_drop = 0.0;

            for (std::size_t i = 0; i < d; ++i) {
                Line line(session, x, dirs[i]);
                const double before = fx;
                const auto r =
                    line_minimize(line, fx, feasible_steps(session.bounds(), x, dirs[i]));
                if (r.t != 0.0) {
                    for (std::size_t k = 0; k < d; ++k) {
                        x[k] += r.t * dirs[i][k];
                    }
                    x = session.clamped(x);
                    fx = r.f;
                }
                if (before - fx > big_drop) {
                    big_drop = before - fx;
                    big_index = i;
                }
            }

            if (f_start - fx <= session.options().tol) {
                session.mark_converged();
                session.end_iteration();
                return;
            }

            for (std::size_t k = 0; k < d; ++k) {
                step[k] = x[k] - x_start[k];
            }
            std::vector<double> extrap(d);
            for (std::size_t k = 0; k < d; ++k) {
                extrap[k] = 2.0 * x[k] - x_start[k];
            }
            const double fe = session.eval(session.clamped(extrap));
            if (fe < f_start) {
                const double t = 2.0 * (f_start - 2.0 * fx + fe) *
                                     (f_start - fx - big_drop) * (f_start - fx - big_drop) -
                                 big_drop * (f_start - fe) * (f_start - fe);
                if (t < 0.0) {
                    Line line(session, x, step);
                    const auto r =
                        line_minimize(line, fx, feasible_steps(session.bounds(), x, step));
                    if (r.t != 0.0) {
                        for (std::size_t k = 0; k < d; ++k) {
                            x[k] += r.t * step[k];
                        }
                        x = session.clamped(x);
                        fx = r.f;
                    }
                    dirs[big_index] = dirs[d - 1];
                    dirs[d - 1] = step;
                }
            }
            session.end_iteration();
        }
    }
};

} // namespace

std::unique_ptr<Minimizer> make_powell() { return std::make_unique<Powell>(); }

} // namespace lotus
