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
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lotus {

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    static Bounds unbounded(int dimension);
    static Bounds box(int dimension, double lo, double hi);

    double width(std::size_t i) const { return upper[i] - lower[i]; }
    void clamp(std::span<double> x) const;
};

/// Black-box cost function with an evaluation counter that only ever grows.
class Objective {
public:
    using Fn = std::function<double(std::span<const double>)>;

    Objective(int dimension, Fn fn, std::optional<Bounds> bounds = std::nullopt);

    int dimension() const { return dimension_; }
    const std::optional<Bounds> &bounds() const { return bounds_; }
    std::uint64_t evaluations() const { return evaluations_; }

    /// Evaluates at x clamped into the bounds. Throws std::domain_error on a
    /// non-finite value.
    double operator()(std::span<const double> x);

private:
    int dimension_;
    Fn fn_;
    std::optional<Bounds> bounds_;
    std::uint64_t evaluations_ = 0;
    std::vector<double> scratch_;
};

struct MinimizeOptions {
    int budget = 2000;       // max objective evaluations
    double tol = 1e-6;       // absolute f-tolerance
    double fd_step = 1e-5;   // finite-difference step for gradient-based methods
    std::uint64_t seed = 0;  // for methods with internal randomness
};

struct OptimizerOutcome {
    std::vector<double> x_best;
    double f_best = std::numeric_limits<double>::infinity();
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    /// Best-so-far objective at the end of each major iteration.
    std::vector<double> trace;
};

/// Raised inside a session when the evaluation budget is spent.
struct BudgetExhausted : std::exception {
    const char *what() const noexcept override { return "evaluation budget exhausted"; }
};

/// Per-run wrapper handed to optimizer implementations. Enforces the budget,
/// tracks the best point seen and the per-iteration trace.
class Session {
public:
    Session(Objective &obj, const MinimizeOptions &opts);

    int dimension() const { return obj_.dimension(); }
    const std::optional<Bounds> &bounds() const { return obj_.bounds(); }
    const MinimizeOptions &options() const { return opts_; }

    /// Throws BudgetExhausted once `budget` evaluations have been made.
    double eval(std::span<const double> x);
    int evaluations() const { return evaluations_; }
    int remaining() const { return opts_.budget - evaluations_; }

    void end_iteration();
    void mark_converged() { converged_ = true; }

    /// Copy of x clamped into the bounds (identity when unbounded).
    std::vector<double> clamped(std::span<const double> x) const;

    OptimizerOutcome finish(bool interrupted) const;

private:
    Objective &obj_;
    MinimizeOptions opts_;
    int evaluations_ = 0;
    int iterations_ = 0;
    bool converged_ = false;
    std::vector<double> x_best_;
    double f_best_ = std::numeric_limits<double>::infinity();
    std::vector<double> trace_;
};

/// Plug-in point for classical optimizers.
class Minimizer {
public:
    virtual ~Minimizer() = default;
    virtual std::string id() const = 0;
    /// Runs until convergence; may be interrupted by BudgetExhausted.
    virtual void run(Session &session, std::vector<double> x0) = 0;
};

using MinimizerFactory = std::function<std::unique_ptr<Minimizer>()>;

/// Adds or replaces a method id. Thread-safe.
void register_optimizer(const std::string &id, MinimizerFactory factory);
std::vector<std::string> optimizer_ids();
std::unique_ptr<Minimizer> make_optimizer(const std::string &id);

/// Throws std::invalid_argument for unknown ids, a wrong x0 length, or a
/// budget below dimension + 2.
OptimizerOutcome minimize(const std::string &method, Objective &obj, std::span<const double> x0,
                          const MinimizeOptions &opts = {});

/// Central differences; costs 2 * dimension evaluations.
std::vector<double> finite_difference_gradient(const std::function<double(std::span<const double>)> &f,
                                               std::span<const double> x, double h);
std::vector<double> finite_difference_gradient(Session &session, std::span<const double> x,
                                               double h);

std::unique_ptr<Minimizer> make_nelder_mead();
std::unique_ptr<Minimizer> make_powell();
std::unique_ptr<Minimizer> make_fd_lbfgs();

} // namespace lotus
