#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swave/errors.hpp"
#include "swave/gradient.hpp"

namespace swave {

enum class BBVariant { BB1, BB2, Alternating };

struct ArmijoConfig {
    double c1 = 1e-4;
    double shrink = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 40;
};

struct BBConfig {
    BBVariant variant = BBVariant::BB1;
    double step_min = 1e-12;
    double step_max = 1e6;
};

struct OptimizerConfig {
    double grad_tol = 1e-10;
    int max_iters = 500;
    ArmijoConfig armijo;
    BBConfig bb;
    bool per_block_step = false;   // separate BB step for the control and geometry blocks

    void validate() const {
        if (!(armijo.c1 > 0.0) || !(armijo.c1 < 1.0))
            throw ParameterError("OptimizerConfig: c1 must lie in (0, 1)");
        if (!(armijo.shrink > 0.0) || !(armijo.shrink < 1.0))
            throw ParameterError("OptimizerConfig: shrink must lie in (0, 1)");
        if (max_iters < 0) throw ParameterError("OptimizerConfig: max_iters must be >= 0");
    }
};

/// One full evaluation of the objective at a stacked point (xi flattened, then
/// the geometric parameters). feasible = false marks a point the model cannot
/// evaluate (positivity loss, invalid geometry); the line search treats it as
/// cost -inf.
struct Evaluation {
    double cost = 0.0;
    CostParts parts;
    std::vector<double> grad;
    bool feasible = true;
    double cfl_max = 0.0;
    double froude_max = 0.0;
};

struct IterateRecord {
    int iter = 0;
    double cost = 0.0;
    double cost_control = 0.0;
    double cost_terminal = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
    std::vector<double> geo;
    double cfl_max = 0.0;
    double froude_max = 0.0;
};

enum class StopReason { Converged, MaxIters, Failed };

struct OptimizeResult {
    std::vector<double> best_point;
    Evaluation best_eval;
    std::vector<IterateRecord> history;
    StopReason reason = StopReason::MaxIters;
    std::string message;
    int iterations = 0;
};

namespace detail {

inline double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b, size_t lo,
                  size_t hi) {
    double acc = 0.0;
    for (size_t k = lo; k < hi; ++k) acc += a[k] * b[k];
    return acc;
}

inline double bb_block_step(const std::vector<double>& s, const std::vector<double>& y, size_t lo,
                            size_t hi, BBVariant variant, int iter, double fallback) {
    const bool use_bb1 = variant == BBVariant::BB1 ||
                         (variant == BBVariant::Alternating && iter % 2 == 0);
    const double sy = dot(s, y, lo, hi);
    if (sy == 0.0) return fallback;
    if (use_bb1) return dot(s, s, lo, hi) / std::abs(sy);
    const double yy = dot(y, y, lo, hi);
    if (yy == 0.0) return fallback;
    return std::abs(sy) / yy;
}

} // namespace detail

/// Barzilai-Borwein ascent step length from successive iterates and gradients
/// on the stacked variable: BB1 tau = <s,s>/|<s,y>|, BB2 tau = |<s,y>|/<y,y>,
/// clamped to [step_min, step_max]; <s,y> = 0 falls back to the supplied step.
inline double bb_step_length(const std::vector<double>& z1, const std::vector<double>& z0,
                             const std::vector<double>& g1, const std::vector<double>& g0,
                             const BBConfig& bb, double fallback, int iter = 0,
                             BBVariant* used = nullptr) {
    std::vector<double> s(z1.size()), y(z1.size());
    for (size_t k = 0; k < z1.size(); ++k) {
        s[k] = z1[k] - z0[k];
        y[k] = g1[k] - g0[k];
    }
    const BBVariant v = bb.variant;
    if (used) *used = v;
    const double tau = detail::bb_block_step(s, y, 0, s.size(), v, iter, fallback);
    return std::clamp(tau, bb.step_min, bb.step_max);
}

/// Backtracking ascent line search from z along its gradient: accepts the first
/// t = initial_step * shrink^k with J(z + t g) >= J(z) + c1 t ||g||^2.
/// Infeasible trial points shrink further. Throws when the budget is exhausted
/// or the gradient vanishes.
template <class Problem>
std::pair<std::vector<double>, double> armijo_ascent_step(Problem& problem,
                                                          const std::vector<double>& z,
                                                          const Evaluation& eval,
                                                          const ArmijoConfig& cfg) {
    const double gnorm = detail::norm2(eval.grad);
    if (gnorm == 0.0)
        throw ParameterError("armijo_ascent_step: gradient is zero");
    double t = cfg.initial_step;
    for (int k = 0; k <= cfg.max_backtracks; ++k) {
        std::vector<double> trial(z.size());
        for (size_t m = 0; m < z.size(); ++m) trial[m] = z[m] + t * eval.grad[m];
        trial = problem.project(trial);
        if (problem.feasible_point(trial)) {
            const Evaluation probe = problem.evaluate(trial, /*need_gradient=*/false);
            if (probe.feasible && probe.cost >= eval.cost + cfg.c1 * t * gnorm * gnorm)
                return {trial, t};
        }
        t *= cfg.shrink;
    }
    throw StalledLineSearchError("armijo_ascent_step: no acceptable step after " +
                                 std::to_string(cfg.max_backtracks) + " backtracks");
}

/// Armijo-initialized Barzilai-Borwein ascent. The best-so-far feasible iterate
/// is tracked and returned; the history records every iterate in order.
template <class Problem>
OptimizeResult optimize(Problem& problem, const std::vector<double>& z_init,
                        const OptimizerConfig& cfg) {
    cfg.validate();
    OptimizeResult res;

    auto record = [&](int it, const std::vector<double>& z, const Evaluation& ev, double step) {
        IterateRecord rec;
        rec.iter = it;
        rec.cost = ev.cost;
        rec.cost_control = ev.parts.control;
        rec.cost_terminal = ev.parts.terminal;
        rec.grad_norm = detail::norm2(ev.grad);
        rec.step = step;
        rec.geo = problem.geo_values(z);
        rec.cfl_max = ev.cfl_max;
        rec.froude_max = ev.froude_max;
        res.history.push_back(rec);
    };

    std::vector<double> z0 = problem.project(z_init);
    Evaluation e0;
    try {
        e0 = problem.evaluate(z0, true);
    } catch (const Error& err) {
        res.reason = StopReason::Failed;
        res.message = std::string("initial evaluation failed: ") + err.what();
        return res;
    }
    if (!e0.feasible) {
        res.reason = StopReason::Failed;
        res.message = "initial point is infeasible";
        return res;
    }
    record(0, z0, e0, 0.0);
    res.best_point = z0;
    res.best_eval = e0;

    if (detail::norm2(e0.grad) <= cfg.grad_tol) {
        res.reason = StopReason::Converged;
        res.iterations = 0;
        return res;
    }

    // Armijo step to seed the two-point BB formula.
    std::vector<double> z1;
    double t_armijo = 0.0;
    Evaluation e1;
    try {
        auto [zt, t] = armijo_ascent_step(problem, z0, e0, cfg.armijo);
        z1 = std::move(zt);
        t_armijo = t;
        e1 = problem.evaluate(z1, true);
    } catch (const Error& err) {
        res.reason = StopReason::Failed;
        res.message = std::string("line search failed: ") + err.what();
        res.iterations = 1;
        return res;
    }
    record(1, z1, e1, t_armijo);
    if (e1.cost > res.best_eval.cost) {
        res.best_point = z1;
        res.best_eval = e1;
    }

    std::vector<double> z_prev = std::move(z0), z_cur = std::move(z1);
    Evaluation e_prev = std::move(e0), e_cur = std::move(e1);
    double last_step = t_armijo;

    int iter = 1;
    while (iter < cfg.max_iters) {
        if (detail::norm2(e_cur.grad) <= cfg.grad_tol) {
            res.reason = StopReason::Converged;
            res.iterations = iter;
            return res;
        }
        ++iter;

        std::vector<double> s(z_cur.size()), y(z_cur.size());
        for (size_t k = 0; k < z_cur.size(); ++k) {
            s[k] = z_cur[k] - z_prev[k];
            y[k] = e_cur.grad[k] - e_prev.grad[k];
        }
        double tau, tau_geo;
        const size_t geo_lo = z_cur.size() - problem.n_geo();
        if (cfg.per_block_step) {
            tau = detail::bb_block_step(s, y, 0, geo_lo, cfg.bb.variant, iter, last_step);
            tau_geo =
                detail::bb_block_step(s, y, geo_lo, z_cur.size(), cfg.bb.variant, iter, last_step);
        } else {
            tau = detail::bb_block_step(s, y, 0, z_cur.size(), cfg.bb.variant, iter, last_step);
            tau_geo = tau;
        }
        tau = std::clamp(tau, cfg.bb.step_min, cfg.bb.step_max);
        tau_geo = std::clamp(tau_geo, cfg.bb.step_min, cfg.bb.step_max);

        // Take the BB step; halve it while the proposal is infeasible.
        Evaluation e_next;
        std::vector<double> z_next;
        bool accepted = false;
        for (int back = 0; back <= cfg.armijo.max_backtracks; ++back) {
            z_next.assign(z_cur.size(), 0.0);
            for (size_t k = 0; k < z_cur.size(); ++k)
                z_next[k] = z_cur[k] + (k < geo_lo ? tau : tau_geo) * e_cur.grad[k];
            z_next = problem.project(z_next);
            if (problem.feasible_point(z_next)) {
                try {
                    e_next = problem.evaluate(z_next, true);
                } catch (const Error& err) {
                    res.reason = StopReason::Failed;
                    res.message = std::string("evaluation failed: ") + err.what();
                    res.iterations = iter;
                    return res;
                }
                if (e_next.feasible) {
                    accepted = true;
                    break;
                }
            }
            tau *= 0.5;
            tau_geo *= 0.5;
        }
        if (!accepted) {
            res.reason = StopReason::Failed;
            res.message = "BB step could not reach a feasible point";
            res.iterations = iter;
            return res;
        }

        record(iter, z_next, e_next, tau);
        if (e_next.cost > res.best_eval.cost) {
            res.best_point = z_next;
            res.best_eval = e_next;
        }
        last_step = tau;
        z_prev = std::move(z_cur);
        e_prev = std::move(e_cur);
        z_cur = std::move(z_next);
        e_cur = std::move(e_next);
    }

    res.reason = (detail::norm2(e_cur.grad) <= cfg.grad_tol) ? StopReason::Converged
                                                             : StopReason::MaxIters;
    res.iterations = iter;
    return res;
}

} // namespace swave
