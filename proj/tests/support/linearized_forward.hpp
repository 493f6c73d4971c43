#pragma once

// Test-only oracle: Lax-Wendroff discretization of the linearized forward
// system  v' + div(F'(u) v) = f,  v(0) = 0, used to check adjoint consistency
// by duality. Kept independent of the adjoint implementation on purpose.

#include <functional>
#include <vector>

#include "swave/field.hpp"
#include "swave/flux.hpp"
#include "swave/forward.hpp"
#include "swave/grid.hpp"

namespace swave_test {

using namespace swave;

// f(x, t) -> (f_h, f_hu)
using Source1D = std::function<Vec2(double, double)>;
// f(x, y, t) -> (f_h, f_hux, f_huy)
using Source2D = std::function<Vec3(double, double, double)>;

inline Vec2 apply_jac(const Mat2& J, double a, double b) {
    return {J[0][0] * a + J[0][1] * b, J[1][0] * a + J[1][1] * b};
}

inline Vec3 apply_jac(const Mat3& J, double a, double b, double c) {
    return {J[0][0] * a + J[0][1] * b + J[0][2] * c,
            J[1][0] * a + J[1][1] * b + J[1][2] * c,
            J[2][0] * a + J[2][1] * b + J[2][2] * c};
}

/// Two-step Lax-Wendroff sweep of the linearized system around the stored
/// trajectory; momentum pinned at walls, mass component closed conservatively.
inline Trajectory1D solve_linearized_1d(const Grid1D& grid, const PhysicsParams& phys,
                                        const Trajectory1D& base, const Source1D& f) {
    const int n = grid.n_nodes;
    const int nt = base.n_steps();
    const double dt = base.dt, dx = grid.dx, g = phys.g;

    Trajectory1D out;
    out.dt = dt;
    out.states.assign(nt + 1, State1D(n));

    std::vector<Vec2> mid(n - 1);
    for (int step = 0; step < nt; ++step) {
        const State1D& u = base.at(step);
        const State1D& v = out.states[step];
        State1D& next = out.states[step + 1];
        const double t = dt * step;

        for (int i = 0; i < n - 1; ++i) {
            const Mat2 Jl = flux_jacobian_1d(u.h[i], u.hu[i], g);
            const Mat2 Jr = flux_jacobian_1d(u.h[i + 1], u.hu[i + 1], g);
            const Vec2 gl = apply_jac(Jl, v.h[i], v.hu[i]);
            const Vec2 gr = apply_jac(Jr, v.h[i + 1], v.hu[i + 1]);
            mid[i] = {0.5 * (v.h[i] + v.h[i + 1]) - 0.5 * dt / dx * (gr[0] - gl[0]),
                      0.5 * (v.hu[i] + v.hu[i + 1]) - 0.5 * dt / dx * (gr[1] - gl[1])};
        }

        auto mid_flux = [&](int i) -> Vec2 {
            const Mat2 J = flux_jacobian_1d(0.5 * (u.h[i] + u.h[i + 1]),
                                            0.5 * (u.hu[i] + u.hu[i + 1]), g);
            return apply_jac(J, mid[i][0], mid[i][1]);
        };

        for (int i = 1; i < n - 1; ++i) {
            const Vec2 fl = mid_flux(i - 1);
            const Vec2 fr = mid_flux(i);
            const Vec2 src = f(grid.x(i), t);
            next.h[i] = v.h[i] - dt / dx * (fr[0] - fl[0]) + dt * src[0];
            next.hu[i] = v.hu[i] - dt / dx * (fr[1] - fl[1]) + dt * src[1];
        }
        next.h[0] = v.h[0] - 2.0 * dt / dx * mid_flux(0)[0];
        next.h[n - 1] = v.h[n - 1] + 2.0 * dt / dx * mid_flux(n - 2)[0];
        next.hu[0] = next.hu[n - 1] = 0.0;
    }
    return out;
}

inline Trajectory2D solve_linearized_2d(const Grid2D& grid, const PhysicsParams& phys,
                                        const Trajectory2D& base, const Source2D& f) {
    const int nx = grid.nx, ny = grid.ny, nn = grid.size();
    const int nt = base.n_steps();
    const double dt = base.dt, dx = grid.dx, dy = grid.dy, g = phys.g;

    Trajectory2D out;
    out.dt = dt;
    out.states.assign(nt + 1, State2D(nn));

    auto xm = [nx](int i, int j) { return j * (nx - 1) + i; };
    auto ym = [nx](int i, int j) { return j * nx + i; };
    std::vector<Vec3> midx((nx - 1) * ny), midy(nx * (ny - 1));

    for (int step = 0; step < nt; ++step) {
        const State2D& u = base.at(step);
        const State2D& v = out.states[step];
        State2D& next = out.states[step + 1];
        const double t = dt * step;

        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx - 1; ++i) {
                const int a = grid.index(i, j), b = grid.index(i + 1, j);
                const Vec3 ga =
                    apply_jac(flux_jacobian_2d_x(u.h[a], u.hu[a], u.hv[a], g), v.h[a], v.hu[a],
                              v.hv[a]);
                const Vec3 gb =
                    apply_jac(flux_jacobian_2d_x(u.h[b], u.hu[b], u.hv[b], g), v.h[b], v.hu[b],
                              v.hv[b]);
                midx[xm(i, j)] = {
                    0.5 * (v.h[a] + v.h[b]) - 0.5 * dt / dx * (gb[0] - ga[0]),
                    0.5 * (v.hu[a] + v.hu[b]) - 0.5 * dt / dx * (gb[1] - ga[1]),
                    0.5 * (v.hv[a] + v.hv[b]) - 0.5 * dt / dx * (gb[2] - ga[2])};
            }
        for (int j = 0; j < ny - 1; ++j)
            for (int i = 0; i < nx; ++i) {
                const int a = grid.index(i, j), b = grid.index(i, j + 1);
                const Vec3 ga =
                    apply_jac(flux_jacobian_2d_y(u.h[a], u.hu[a], u.hv[a], g), v.h[a], v.hu[a],
                              v.hv[a]);
                const Vec3 gb =
                    apply_jac(flux_jacobian_2d_y(u.h[b], u.hu[b], u.hv[b], g), v.h[b], v.hu[b],
                              v.hv[b]);
                midy[ym(i, j)] = {
                    0.5 * (v.h[a] + v.h[b]) - 0.5 * dt / dy * (gb[0] - ga[0]),
                    0.5 * (v.hu[a] + v.hu[b]) - 0.5 * dt / dy * (gb[1] - ga[1]),
                    0.5 * (v.hv[a] + v.hv[b]) - 0.5 * dt / dy * (gb[2] - ga[2])};
            }

        auto fx = [&](int i, int j) -> Vec3 {
            const int a = grid.index(i, j), b = grid.index(i + 1, j);
            const Mat3 J = flux_jacobian_2d_x(0.5 * (u.h[a] + u.h[b]), 0.5 * (u.hu[a] + u.hu[b]),
                                              0.5 * (u.hv[a] + u.hv[b]), g);
            const Vec3& m = midx[xm(i, j)];
            return apply_jac(J, m[0], m[1], m[2]);
        };
        auto fy = [&](int i, int j) -> Vec3 {
            const int a = grid.index(i, j), b = grid.index(i, j + 1);
            const Mat3 J = flux_jacobian_2d_y(0.5 * (u.h[a] + u.h[b]), 0.5 * (u.hu[a] + u.hu[b]),
                                              0.5 * (u.hv[a] + u.hv[b]), g);
            const Vec3& m = midy[ym(i, j)];
            return apply_jac(J, m[0], m[1], m[2]);
        };

        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const int k = grid.index(i, j);
                const bool wall = (i == 0 || i == nx - 1 || j == 0 || j == ny - 1);
                const double fxw = (i > 0) ? fx(i - 1, j)[0] : 0.0;
                const double fxe = (i < nx - 1) ? fx(i, j)[0] : 0.0;
                const double fys = (j > 0) ? fy(i, j - 1)[0] : 0.0;
                const double fyn = (j < ny - 1) ? fy(i, j)[0] : 0.0;
                const double cx = (i == 0 || i == nx - 1) ? 2.0 : 1.0;
                const double cy = (j == 0 || j == ny - 1) ? 2.0 : 1.0;
                next.h[k] = v.h[k] - cx * dt / dx * (fxe - fxw) - cy * dt / dy * (fyn - fys);
                if (wall) {
                    next.hu[k] = next.hv[k] = 0.0;
                } else {
                    const Vec3 fw = fx(i - 1, j), fe = fx(i, j);
                    const Vec3 fs = fy(i, j - 1), fn = fy(i, j);
                    const Vec3 src = f(grid.x(i), grid.y(j), t);
                    next.hu[k] = v.hu[k] - dt / dx * (fe[1] - fw[1]) - dt / dy * (fn[1] - fs[1]) +
                                 dt * src[1];
                    next.hv[k] = v.hv[k] - dt / dx * (fe[2] - fw[2]) - dt / dy * (fn[2] - fs[2]) +
                                 dt * src[2];
                }
            }
        // mass source, applied everywhere including walls
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                next.h[grid.index(i, j)] += dt * f(grid.x(i), grid.y(j), t)[0];
    }
    return out;
}

} // namespace swave_test
