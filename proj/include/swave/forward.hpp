#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swave/control.hpp"
#include "swave/errors.hpp"
#include "swave/field.hpp"
#include "swave/flux.hpp"
#include "swave/grid.hpp"
#include "swave/quadrature.hpp"

namespace swave {

struct SolverConfig {
    int nt = 2000;
    double T = 10.0;
    double cfl_warn_threshold = 1.0;

    double dt() const { return T / static_cast<double>(nt); }

    void validate() const {
        if (nt < 1) throw ParameterError("SolverConfig: nt must be >= 1");
        if (!(T > 0.0)) throw ParameterError("SolverConfig: T must be positive");
    }
};

struct SolveDiagnostics {
    double cfl_max = 0.0;
    int cfl_warn_steps = 0;        // steps on which CFL exceeded the threshold
    int first_warn_step = -1;
};

/// Max over nodes of (|v| + sqrt(gH)) dt / dx.
inline double cfl_number(const State1D& s, double g, double dt, double dx) {
    double worst = 0.0;
    for (int i = 0; i < s.size(); ++i) {
        const double v = s.hu[i] / s.h[i];
        worst = std::max(worst, (std::abs(v) + std::sqrt(g * s.h[i])) * dt / dx);
    }
    return worst;
}

/// Max over nodes and both directions of (|v_d| + sqrt(gH)) dt / h_d.
inline double cfl_number(const State2D& s, double g, double dt, double dx, double dy) {
    double worst = 0.0;
    for (int k = 0; k < s.size(); ++k) {
        const double c = std::sqrt(g * s.h[k]);
        worst = std::max(worst, (std::abs(s.hu[k] / s.h[k]) + c) * dt / dx);
        worst = std::max(worst, (std::abs(s.hv[k] / s.h[k]) + c) * dt / dy);
    }
    return worst;
}

/// Max over space-time of the local Froude number |v| / sqrt(gH).
inline double froude_diagnostic(const Trajectory1D& traj, double g) {
    double worst = 0.0;
    for (const auto& s : traj.states)
        for (int i = 0; i < s.size(); ++i)
            worst = std::max(worst, std::abs(s.hu[i] / s.h[i]) / std::sqrt(g * s.h[i]));
    return worst;
}

inline double froude_diagnostic(const Trajectory2D& traj, double g) {
    double worst = 0.0;
    for (const auto& s : traj.states)
        for (int k = 0; k < s.size(); ++k) {
            const double sp = std::hypot(s.hu[k], s.hv[k]) / s.h[k];
            worst = std::max(worst, sp / std::sqrt(g * s.h[k]));
        }
    return worst;
}

/// Largest relative drift of the trapezoid mass integral across stored levels.
inline double mass_drift(const Grid1D& grid, const Trajectory1D& traj) {
    const double m0 = trapezoid_integral(grid, traj.states.front().h);
    double worst = 0.0;
    for (const auto& s : traj.states)
        worst = std::max(worst, std::abs(trapezoid_integral(grid, s.h) / m0 - 1.0));
    return worst;
}

inline double mass_drift(const Grid2D& grid, const Trajectory2D& traj) {
    const double m0 = trapezoid_integral(grid, traj.states.front().h);
    double worst = 0.0;
    for (const auto& s : traj.states)
        worst = std::max(worst, std::abs(trapezoid_integral(grid, s.h) / m0 - 1.0));
    return worst;
}

namespace detail {

inline void check_positive_1d(const State1D& s, long step) {
    for (int i = 0; i < s.size(); ++i)
        if (!(s.h[i] > 0.0))
            throw PositivityError("solve_forward_1d: H <= 0 at node " + std::to_string(i) +
                                      ", step " + std::to_string(step),
                                  step, i);
}

inline void check_positive_2d(const State2D& s, long step) {
    for (int k = 0; k < s.size(); ++k)
        if (!(s.h[k] > 0.0))
            throw PositivityError("solve_forward_2d: H <= 0 at node " + std::to_string(k) +
                                      ", step " + std::to_string(step),
                                  step, k);
}

} // namespace detail

/// Two-step (Richtmyer) Lax-Wendroff solve of the 1D shallow-water system with
/// momentum forcing 1_omega xi. Walls: momentum pinned to zero, H closed by a
/// half-cell balance with zero wall flux so the trapezoid mass telescopes exactly.
/// The source enters the full-step update, evaluated at the current time level.
inline Trajectory1D solve_forward_1d(const Grid1D& grid, const PhysicsParams& phys,
                                     const SolverConfig& config, const ControlField1D& control,
                                     const std::vector<double>& H_init,
                                     const std::vector<double>& v_init,
                                     SolveDiagnostics* diag = nullptr) {
    phys.validate();
    config.validate();
    if (phys.kappa != 0.0)
        throw ParameterError("solve_forward_1d: only the inviscid system (kappa = 0) is solved");
    const int n = grid.n_nodes;
    if (static_cast<int>(H_init.size()) != n || static_cast<int>(v_init.size()) != n)
        throw ParameterError("solve_forward_1d: initial data size mismatch");
    if (control.n_levels() < config.nt)
        throw ParameterError("solve_forward_1d: control has too few time levels");

    const double dt = config.dt();
    const double dx = grid.dx;
    const double g = phys.g;

    Trajectory1D traj;
    traj.dt = dt;
    traj.states.reserve(config.nt + 1);

    State1D s(n);
    for (int i = 0; i < n; ++i) {
        s.h[i] = H_init[i];
        s.hu[i] = H_init[i] * v_init[i];
    }
    s.hu[0] = 0.0;
    s.hu[n - 1] = 0.0;
    detail::check_positive_1d(s, 0);
    traj.states.push_back(s);

    SolveDiagnostics local;
    std::vector<double> mid_h(n - 1), mid_hu(n - 1);

    for (int step = 0; step < config.nt; ++step) {
        const State1D& u = traj.states.back();

        const double cfl = cfl_number(u, g, dt, dx);
        local.cfl_max = std::max(local.cfl_max, cfl);
        if (cfl > config.cfl_warn_threshold) {
            if (local.first_warn_step < 0) local.first_warn_step = step;
            ++local.cfl_warn_steps;
        }

        // Predictor: half-step states at cell midpoints.
        for (int i = 0; i < n - 1; ++i) {
            const Vec2 fl = flux_1d(u.h[i], u.hu[i], g);
            const Vec2 fr = flux_1d(u.h[i + 1], u.hu[i + 1], g);
            mid_h[i] = 0.5 * (u.h[i] + u.h[i + 1]) - 0.5 * dt / dx * (fr[0] - fl[0]);
            mid_hu[i] = 0.5 * (u.hu[i] + u.hu[i + 1]) - 0.5 * dt / dx * (fr[1] - fl[1]);
            if (!(mid_h[i] > 0.0))
                throw PositivityError("solve_forward_1d: predictor H <= 0 at midpoint " +
                                          std::to_string(i) + ", step " + std::to_string(step),
                                      step, i);
        }

        // Corrector: conservative update plus the momentum source.
        State1D next(n);
        for (int i = 1; i < n - 1; ++i) {
            const Vec2 fl = flux_1d(mid_h[i - 1], mid_hu[i - 1], g);
            const Vec2 fr = flux_1d(mid_h[i], mid_hu[i], g);
            next.h[i] = u.h[i] - dt / dx * (fr[0] - fl[0]);
            next.hu[i] = u.hu[i] - dt / dx * (fr[1] - fl[1]) + dt * control.at_node(step, i);
        }
        // Walls: half-cell mass balance, zero flux through the wall itself.
        next.h[0] = u.h[0] - 2.0 * dt / dx * mid_hu[0];
        next.h[n - 1] = u.h[n - 1] + 2.0 * dt / dx * mid_hu[n - 2];
        next.hu[0] = 0.0;
        next.hu[n - 1] = 0.0;

        detail::check_positive_1d(next, step + 1);
        traj.states.push_back(std::move(next));
    }

    if (diag) *diag = local;
    return traj;
}

/// Dimension-wise two-step Lax-Wendroff solve of the 2D shallow-water system:
/// unsplit predictors at the x- and y-face midpoints, conservative corrector,
/// momentum source on omega at the full step. Walls: both momentum components
/// pinned to zero; H closed by half-cell balances in the wall-normal direction.
inline Trajectory2D solve_forward_2d(const Grid2D& grid, const PhysicsParams& phys,
                                     const SolverConfig& config, const ControlField2D& control,
                                     const std::vector<double>& H_init,
                                     const std::vector<double>& vx_init,
                                     const std::vector<double>& vy_init,
                                     SolveDiagnostics* diag = nullptr) {
    phys.validate();
    config.validate();
    if (phys.kappa != 0.0)
        throw ParameterError("solve_forward_2d: only the inviscid system (kappa = 0) is solved");
    const int nx = grid.nx, ny = grid.ny, nn = grid.size();
    if (static_cast<int>(H_init.size()) != nn)
        throw ParameterError("solve_forward_2d: initial data size mismatch");

    const double dt = config.dt();
    const double dx = grid.dx, dy = grid.dy;
    const double g = phys.g;

    Trajectory2D traj;
    traj.dt = dt;
    traj.states.reserve(config.nt + 1);

    State2D s(nn);
    for (int k = 0; k < nn; ++k) {
        s.h[k] = H_init[k];
        s.hu[k] = H_init[k] * vx_init[k];
        s.hv[k] = H_init[k] * vy_init[k];
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) {
                s.hu[grid.index(i, j)] = 0.0;
                s.hv[grid.index(i, j)] = 0.0;
            }
    detail::check_positive_2d(s, 0);
    traj.states.push_back(s);

    SolveDiagnostics local;

    // Midpoint states: x-faces (nx-1) x ny, y-faces nx x (ny-1).
    const int nmx = (nx - 1) * ny;
    const int nmy = nx * (ny - 1);
    std::vector<double> mxh(nmx), mxu(nmx), mxv(nmx);
    std::vector<double> myh(nmy), myu(nmy), myv(nmy);
    auto xm = [nx](int i, int j) { return j * (nx - 1) + i; };
    auto ym = [nx](int i, int j) { return j * nx + i; };

    for (int step = 0; step < config.nt; ++step) {
        const State2D& u = traj.states.back();

        const double cfl = cfl_number(u, g, dt, dx, dy);
        local.cfl_max = std::max(local.cfl_max, cfl);
        if (cfl > config.cfl_warn_threshold) {
            if (local.first_warn_step < 0) local.first_warn_step = step;
            ++local.cfl_warn_steps;
        }

        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx - 1; ++i) {
                const int a = grid.index(i, j), b = grid.index(i + 1, j);
                const Vec3 fa = flux_2d_x(u.h[a], u.hu[a], u.hv[a], g);
                const Vec3 fb = flux_2d_x(u.h[b], u.hu[b], u.hv[b], g);
                const int m = xm(i, j);
                mxh[m] = 0.5 * (u.h[a] + u.h[b]) - 0.5 * dt / dx * (fb[0] - fa[0]);
                mxu[m] = 0.5 * (u.hu[a] + u.hu[b]) - 0.5 * dt / dx * (fb[1] - fa[1]);
                mxv[m] = 0.5 * (u.hv[a] + u.hv[b]) - 0.5 * dt / dx * (fb[2] - fa[2]);
                if (!(mxh[m] > 0.0))
                    throw PositivityError("solve_forward_2d: predictor H <= 0 (x-face), step " +
                                              std::to_string(step),
                                          step, m);
            }
        for (int j = 0; j < ny - 1; ++j)
            for (int i = 0; i < nx; ++i) {
                const int a = grid.index(i, j), b = grid.index(i, j + 1);
                const Vec3 fa = flux_2d_y(u.h[a], u.hu[a], u.hv[a], g);
                const Vec3 fb = flux_2d_y(u.h[b], u.hu[b], u.hv[b], g);
                const int m = ym(i, j);
                myh[m] = 0.5 * (u.h[a] + u.h[b]) - 0.5 * dt / dy * (fb[0] - fa[0]);
                myu[m] = 0.5 * (u.hu[a] + u.hu[b]) - 0.5 * dt / dy * (fb[1] - fa[1]);
                myv[m] = 0.5 * (u.hv[a] + u.hv[b]) - 0.5 * dt / dy * (fb[2] - fa[2]);
                if (!(myh[m] > 0.0))
                    throw PositivityError("solve_forward_2d: predictor H <= 0 (y-face), step " +
                                              std::to_string(step),
                                          step, m);
            }

        State2D next(nn);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const int k = grid.index(i, j);
                const bool wall = (i == 0 || i == nx - 1 || j == 0 || j == ny - 1);

                // Mass fluxes through the four faces; walls contribute zero.
                double fxw = (i > 0) ? mxu[xm(i - 1, j)] : 0.0;
                double fxe = (i < nx - 1) ? mxu[xm(i, j)] : 0.0;
                double fys = (j > 0) ? myv[ym(i, j - 1)] : 0.0;
                double fyn = (j < ny - 1) ? myv[ym(i, j)] : 0.0;
                const double cx = (i == 0 || i == nx - 1) ? 2.0 : 1.0;
                const double cy = (j == 0 || j == ny - 1) ? 2.0 : 1.0;
                next.h[k] = u.h[k] - cx * dt / dx * (fxe - fxw) - cy * dt / dy * (fyn - fys);

                if (wall) {
                    next.hu[k] = 0.0;
                    next.hv[k] = 0.0;
                } else {
                    const int mw = xm(i - 1, j), me = xm(i, j);
                    const int ms = ym(i, j - 1), mn = ym(i, j);
                    const Vec3 fw = flux_2d_x(mxh[mw], mxu[mw], mxv[mw], g);
                    const Vec3 fe = flux_2d_x(mxh[me], mxu[me], mxv[me], g);
                    const Vec3 fs = flux_2d_y(myh[ms], myu[ms], myv[ms], g);
                    const Vec3 fn = flux_2d_y(myh[mn], myu[mn], myv[mn], g);
                    next.hu[k] = u.hu[k] - dt / dx * (fe[1] - fw[1]) - dt / dy * (fn[1] - fs[1]) +
                                 dt * control.fx_at(step, i, j);
                    next.hv[k] = u.hv[k] - dt / dx * (fe[2] - fw[2]) - dt / dy * (fn[2] - fs[2]) +
                                 dt * control.fy_at(step, i, j);
                }
            }

        detail::check_positive_2d(next, step + 1);
        traj.states.push_back(std::move(next));
    }

    if (diag) *diag = local;
    return traj;
}

} // namespace swave
