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
#include <map>
#include <mutex>
#include <sstream>

#include "lotus/optim.hpp"

namespace lotus {

namespace {

struct Registry {
    std::mutex mu;
    std::map<std::string, MinimizerFactory> factories{
        {"nelder-mead", make_nelder_mead},
        {"powell", make_powell},
        {"fd-lbfgs", make_fd_lbfgs},
    };
};

Registry &registry() {
    static Registry r;
    return r;
}

} // namespace

Bounds Bounds::unbounded(int dimension) {
    const auto d = static_cast<std::size_t>(dimension);
    return {std::vector<double>(d, -std::numeric_limits<double>::infinity()),
            std::vector<double>(d, std::numeric_limits<double>::infinity())};
}

Bounds Bounds::box(int dimension, double lo, double hi) {
    const auto d = static_cast<std::size_t>(dimension);
    return {std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

void Bounds::clamp(std::span<double> x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = std::clamp(x[i], lower[i], upper[i]);
    }
}

Objective::Objective(int dimension, Fn fn, std::optional<Bounds> bounds)
    : dimension_(dimension), fn_(std::move(fn)), bounds_(std::move(bounds)) {
    if (dimension < 1) {
        throw std::invalid_argument("Objective: dimension must be >= 1");
    }
    if (bounds_) {
        const auto d = static_cast<std::size_t>(dimension);
        if (bounds_->lower.size() != d || bounds_->upper.size() != d) {
            throw std::invalid_argument("Objective: bounds do not match the dimension");
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (!(bounds_->lower[i] <= bounds_->upper[i])) {
                throw std::invalid_argument("Objective: empty bound interval");
            }
        }
    }
}

double Objective::operator()(std::span<const double> x) {
    if (x.size() != static_cast<std::size_t>(dimension_)) {
        throw std::invalid_argument("Objective: point has the wrong dimension");
    }
    ++evaluations_;
    double f = 0.0;
    if (bounds_) {
        scratch_.assign(x.begin(), x.end());
        bounds_->clamp(scratch_);
        f = fn_(scratch_);
    } else {
        f = fn_(x);
    }
    if (!std::isfinite(f)) {
        std::ostringstream os;
        os << "objective returned a non-finite value (" << f << ") at evaluation "
           << evaluations_ << ", x = [";
        for (std::size_t i = 0; i < x.size(); ++i) {
            os << (i ? ", " : "") << x[i];
        }
        os << "]";
        throw std::domain_error(os.str());
    }
    return f;
}

Session::Session(Objective &obj, const MinimizeOptions &opts) : obj_(obj), opts_(opts) {}

double Session::eval(std::span<const double> x) {
    if (evaluations_ >= opts_.budget) {
        throw BudgetExhausted{};
    }
    ++evaluations_;
    const double f = obj_(x);
    if (f < f_best_) {
        f_best_ = f;
        x_best_ = clamped(x);
    }
    return f;
}

void Session::end_iteration() {
    ++iterations_;
    trace_.push_back(f_best_);
}

std::vector<double> Session::clamped(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    if (obj_.bounds()) {
        obj_.bounds()->clamp(out);
    }
    return out;
}

OptimizerOutcome Session::finish(bool interrupted) const {
    OptimizerOutcome out;
    out.x_best = x_best_;
    out.f_best = f_best_;
    out.evaluations = evaluations_;
    out.trace = trace_;
    out.iterations = iterations_;
    if (interrupted || iterations_ == 0) {
        // The iteration cut short by the budget still counts.
        ++out.iterations;
        out.trace.push_back(f_best_);
    }
    out.converged = converged_ && !interrupted;
    return out;
}

void register_optimizer(const std::string &id, MinimizerFactory factory) {
    auto &r = registry();
    std::lock_guard lock(r.mu);
    r.factories[id] = std::move(factory);
}

std::vector<std::string> optimizer_ids() {
    auto &r = registry();
    std::lock_guard lock(r.mu);
    std::vector<std::string> ids;
    for (const auto &[id, _] : r.factories) {
        ids.push_back(id);
    }
    return ids;
}

std::unique_ptr<Minimizer> make_optimizer(const std::string &id) {
    auto &r = registry();
    std::lock_guard lock(r.mu);
    const auto it = r.factories.find(id);
    if (it == r.factories.end()) {
        std::string known;
        for (const auto &[k, _] : r.factories) {
            known += (known.empty() ? "" : ", ") + k;
        }
        throw std::invalid_argument("unknown optimizer '" + id + "' (known: " + known + ")");
    }
    return it->second();
}

OptimizerOutcome minimize(const std::string &method, Objective &obj, std::span<const double> x0,
                          const MinimizeOptions &opts) {
    auto impl = make_optimizer(method);
    if (x0.size() != static_cast<std::size_t>(obj.dimension())) {
        throw std::invalid_argument("minimize: x0 has length " + std::to_string(x0.size()) +
                                    ", objective dimension is " + std::to_string(obj.dimension()));
    }
    if (opts.budget < obj.dimension() + 2) {
        throw std::invalid_argument("minimize: budget must be at least dimension + 2");
    }
    if (!(opts.tol >= 0.0) || !(opts.fd_step > 0.0)) {
        throw std::invalid_argument("minimize: tol must be >= 0 and fd_step > 0");
    }
    Session session(obj, opts);
    bool interrupted = false;
    try {
        impl->run(session, session.clamped(x0));
    } catch (const BudgetExhausted &) {
        interrupted = true;
    }
    return session.finish(interrupted);
}

std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)> &f,
                                               std::span<const double> x, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite_difference_gradient: h must be > 0");
    }
    std::vector<double> xp(x.begin(), x.end());
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw std::domain_error("finite_difference_gradient: non-finite function value");
        }
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

std::vector<double> finite_difference_gradient(Session &session, std::span<const double> x,
                                               double h) {
    return finite_difference_gradient([&](std::span<const double> p) { return session.eval(p); },
                                      x, h);
}

} // namespace lotus
