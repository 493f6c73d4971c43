#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "swave/curve.hpp"
#include "swave/errors.hpp"
#include "swave/field.hpp"
#include "swave/flux.hpp"
#include "swave/forward.hpp"
#include "swave/grid.hpp"
#include "swave/map1d.hpp"
#include "swave/quadrature.hpp"

namespace swave {

/// Adjoint datum at the final time; same component layout as the state.
using TerminalCondition1D = State1D;
using TerminalCondition2D = State2D;

/// Nodal values of the Gaussian approximation of the Dirac at x0,
/// (1/(sigma sqrt(2 pi))) exp(-(x - x0)^2 / (2 sigma^2)) with 4 sigma = dx.
inline std::vector<double> gaussian_dirac_1d(double x0, const Grid1D& grid) {
    if (!(x0 > 0.0) || !(x0 < grid.length))
        throw ParameterError("gaussian_dirac_1d: x0 must lie inside (0, L)");
    const double sigma = 0.25 * grid.dx;
    const double scale = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    std::vector<double> out(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double r = (grid.x(i) - x0) / sigma;
        out[i] = scale * std::exp(-0.5 * r * r);
    }
    return out;
}

/// Lattice (trapezoid) mass of the nodal Gaussian. With 4 sigma = dx this is a
/// phase-dependent constant near 1.6 / 0.43, not 1; the terminal conditions
/// divide by it so the discrete delta pairs with unit weight.
inline double dirac_lattice_mass(const Grid1D& grid, const std::vector<double>& dirac) {
    return trapezoid_integral(grid, dirac);
}

/// 1D terminal condition q(.,T) = delta_eta / det grad X(L/2) * grad phi(u(eta,T))
/// with phi(u) = u1, so grad phi = (1, 0):
/// q1 = normalized Gaussian at eta divided by X'(L/2) = 4 eta (L - eta) / L^2, q2 = 0.
inline TerminalCondition1D terminal_condition_1d(const State1D& /*u_T*/, double eta,
                                                 const PiecewiseQuadraticMap& map,
                                                 const Grid1D& grid) {
    TerminalCondition1D q(grid.n_nodes);
    const std::vector<double> dirac = gaussian_dirac_1d(eta, grid);
    const double z = dirac_lattice_mass(grid, dirac);
    const double xp_mid = map_derivative(map, 0.5 * map.L);
    for (int i = 0; i < grid.n_nodes; ++i) q.h[i] = dirac[i] / (z * xp_mid);
    return q;
}

/// Reference-strip Gaussian density for the 2D line source, evaluated in tube
/// coordinates: delta(y) = g(y2) for y1 in (0, ell), zero outside, 4 sigma = dx.
/// The transverse lattice sum at zero phase divides the density so a straight
/// grid-aligned strip carries unit discrete mass per unit curve length.
struct LineSourceDensity {
    double sigma = 0.0;
    double scale = 0.0;
    double lattice_norm = 1.0;
    double ell = 0.0;

    LineSourceDensity(const Grid2D& grid, double ell_) : ell(ell_) {
        sigma = 0.25 * grid.dx;
        scale = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
        double z = 0.0;
        for (int j = -8; j <= 8; ++j) {
            const double r = static_cast<double>(j) * grid.dy / sigma;
            z += grid.dy * scale * std::exp(-0.5 * r * r);
        }
        lattice_norm = z;
    }

    double operator()(const Vec2& y_local) const {
        if (y_local[0] <= 0.0 || y_local[0] >= ell) return 0.0;
        const double r = y_local[1] / sigma;
        return scale * std::exp(-0.5 * r * r) / lattice_norm;
    }
};

/// 2D terminal condition along the deformed curve: with phi(u) = H^2,
/// grad phi = (2H, 0, 0); at every grid node x with a located tube preimage y,
/// q1(x,T) = delta(y) * 2 H(x,T), momentum components zero.
inline TerminalCondition2D terminal_condition_2d(const State2D& u_T, const DeformationMap2D& map,
                                                 const CurveFrame& frame,
                                                 const TubularNeighborhood& tube,
                                                 const Grid2D& grid) {
    TerminalCondition2D q(grid.size());
    const InverseLocator locator(grid, map, frame, tube);
    const LineSourceDensity density(grid, map.ell());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const auto y = locator.locate({grid.x(i), grid.y(j)});
            if (!y) continue;
            const int k = grid.index(i, j);
            q.h[k] = density(*y) * 2.0 * u_T.h[k];
        }
    return q;
}

namespace detail {

inline void check_finite(const std::vector<double>& v, long step, const char* what) {
    for (double x : v)
        if (!std::isfinite(x))
            throw InstabilityError(std::string(what) + ": non-finite value at backward step " +
                                       std::to_string(step),
                                   step);
}

} // namespace detail

/// Backward sweep of the 1D adjoint system -dq/dt - F'(u)^T dq/dx = 0 with
/// q = 0 at the walls: explicit Euler in (backward) time, centered second-order
/// differences in space, the Jacobian frozen at the stored state of the level
/// being computed:
///   q^n = q^{n+1} + dt F'(u^n)^T D0 q^{n+1}.
inline AdjointTrajectory1D solve_adjoint_1d(const Grid1D& grid, const PhysicsParams& phys,
                                            const Trajectory1D& traj,
                                            const TerminalCondition1D& terminal) {
    const int n = grid.n_nodes;
    const int nt = traj.n_steps();
    const double dt = traj.dt;
    const double dx = grid.dx;
    const double g = phys.g;

    AdjointTrajectory1D adj;
    adj.dt = dt;
    adj.levels.assign(nt + 1, Adjoint1D(n));

    Adjoint1D& qT = adj.levels[nt];
    qT = terminal;
    qT.h[0] = qT.h[n - 1] = 0.0;
    qT.hu[0] = qT.hu[n - 1] = 0.0;

    for (int lvl = nt - 1; lvl >= 0; --lvl) {
        const Adjoint1D& qn = adj.levels[lvl + 1];
        Adjoint1D& q = adj.levels[lvl];
        const State1D& u = traj.at(lvl);
        detail::check_finite(u.h, lvl, "solve_adjoint_1d: state");
        detail::check_finite(u.hu, lvl, "solve_adjoint_1d: state");
        for (int i = 1; i < n - 1; ++i) {
            const double dq1 = (qn.h[i + 1] - qn.h[i - 1]) / (2.0 * dx);
            const double dq2 = (qn.hu[i + 1] - qn.hu[i - 1]) / (2.0 * dx);
            const Mat2 J = flux_jacobian_1d(u.h[i], u.hu[i], g);
            // (F'^T grad q)_l = sum_i J[i][l] dq_i
            q.h[i] = qn.h[i] + dt * (J[0][0] * dq1 + J[1][0] * dq2);
            q.hu[i] = qn.hu[i] + dt * (J[0][1] * dq1 + J[1][1] * dq2);
        }
        q.h[0] = q.h[n - 1] = 0.0;
        q.hu[0] = q.hu[n - 1] = 0.0;
        detail::check_finite(q.h, lvl, "solve_adjoint_1d");
        detail::check_finite(q.hu, lvl, "solve_adjoint_1d");
    }
    return adj;
}

/// Backward sweep of the 2D adjoint system with the 3x3x2 flux Jacobian tensor:
/// q^n_l = q^{n+1}_l + dt [Jx(u^n)^T D0x q^{n+1} + Jy(u^n)^T D0y q^{n+1}]_l.
inline AdjointTrajectory2D solve_adjoint_2d(const Grid2D& grid, const PhysicsParams& phys,
                                            const Trajectory2D& traj,
                                            const TerminalCondition2D& terminal) {
    const int nx = grid.nx, ny = grid.ny;
    const int nt = traj.n_steps();
    const double dt = traj.dt;
    const double g = phys.g;

    AdjointTrajectory2D adj;
    adj.dt = dt;
    adj.levels.assign(nt + 1, Adjoint2D(grid.size()));

    auto zero_boundary = [&](Adjoint2D& q) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) {
                    const int k = grid.index(i, j);
                    q.h[k] = q.hu[k] = q.hv[k] = 0.0;
                }
    };

    adj.levels[nt] = terminal;
    zero_boundary(adj.levels[nt]);

    for (int lvl = nt - 1; lvl >= 0; --lvl) {
        const Adjoint2D& qn = adj.levels[lvl + 1];
        Adjoint2D& q = adj.levels[lvl];
        const State2D& u = traj.at(lvl);
        detail::check_finite(u.h, lvl, "solve_adjoint_2d: state");
        for (int j = 1; j < ny - 1; ++j)
            for (int i = 1; i < nx - 1; ++i) {
                const int k = grid.index(i, j);
                const int kw = grid.index(i - 1, j), ke = grid.index(i + 1, j);
                const int ks = grid.index(i, j - 1), kn = grid.index(i, j + 1);
                const double dx1 = (qn.h[ke] - qn.h[kw]) / (2.0 * grid.dx);
                const double dx2 = (qn.hu[ke] - qn.hu[kw]) / (2.0 * grid.dx);
                const double dx3 = (qn.hv[ke] - qn.hv[kw]) / (2.0 * grid.dx);
                const double dy1 = (qn.h[kn] - qn.h[ks]) / (2.0 * grid.dy);
                const double dy2 = (qn.hu[kn] - qn.hu[ks]) / (2.0 * grid.dy);
                const double dy3 = (qn.hv[kn] - qn.hv[ks]) / (2.0 * grid.dy);
                const Mat3 Jx = flux_jacobian_2d_x(u.h[k], u.hu[k], u.hv[k], g);
                const Mat3 Jy = flux_jacobian_2d_y(u.h[k], u.hu[k], u.hv[k], g);
                q.h[k] = qn.h[k] + dt * (Jx[0][0] * dx1 + Jx[1][0] * dx2 + Jx[2][0] * dx3 +
                                         Jy[0][0] * dy1 + Jy[1][0] * dy2 + Jy[2][0] * dy3);
                q.hu[k] = qn.hu[k] + dt * (Jx[0][1] * dx1 + Jx[1][1] * dx2 + Jx[2][1] * dx3 +
                                           Jy[0][1] * dy1 + Jy[1][1] * dy2 + Jy[2][1] * dy3);
                q.hv[k] = qn.hv[k] + dt * (Jx[0][2] * dx1 + Jx[1][2] * dx2 + Jx[2][2] * dx3 +
                                           Jy[0][2] * dy1 + Jy[1][2] * dy2 + Jy[2][2] * dy3);
            }
        zero_boundary(q);
        detail::check_finite(q.h, lvl, "solve_adjoint_2d");
        detail::check_finite(q.hu, lvl, "solve_adjoint_2d");
        detail::check_finite(q.hv, lvl, "solve_adjoint_2d");
    }
    return adj;
}

} // namespace swave
