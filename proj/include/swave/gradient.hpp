#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "swave/adjoint.hpp"
#include "swave/control.hpp"
#include "swave/curve.hpp"
#include "swave/errors.hpp"
#include "swave/field.hpp"
#include "swave/flux.hpp"
#include "swave/grid.hpp"
#include "swave/interp.hpp"
#include "swave/map1d.hpp"
#include "swave/quadrature.hpp"

namespace swave {

struct CostConfig {
    double alpha = 0.5;

    void validate() const {
        if (!(alpha > 0.0)) throw ParameterError("CostConfig: alpha must be positive");
    }
};

struct CostParts {
    double control = 0.0;    // -(alpha/2) int ||xi||^2 dt, signed contribution
    double terminal = 0.0;
    double total() const { return control + terminal; }
};

/// J(xi, eta) = -(alpha/2) int_0^T ||xi||^2_{L2(omega)} dt + H(eta, T),
/// the terminal trace by linear interpolation, time integrals by trapezoid
/// over the nt+1 control levels.
inline CostParts cost_value(const Grid1D& grid, const Trajectory1D& traj,
                            const ControlField1D& control, double eta, const CostConfig& cost) {
    cost.validate();
    if (!(eta > 0.0) || !(eta < grid.length))
        throw ParameterError("cost_value: eta must lie inside (0, L)");
    CostParts parts;
    const int nt = traj.n_steps();
    double acc = 0.0;
    for (int n = 0; n <= nt; ++n)
        acc += time_weight(n, nt) * control.norm_sq_level(n, grid.dx);
    parts.control = -0.5 * cost.alpha * acc * traj.dt;
    parts.terminal = linear_interpolate(grid, traj.states.back().h, eta);
    return parts;
}

/// 2D cost: control part as in 1D; terminal part int_Gamma H(x,T)^2 dGamma
/// realized as the ds-trapezoid of H(X(s,0),T)^2 along the deformed curve
/// (|cof grad X . n| = 1 on Gamma_0, so no metric factor appears).
inline CostParts cost_value(const Grid2D& grid, const Trajectory2D& traj,
                            const ControlField2D& control, const DeformationMap2D& map,
                            const CurveFrame& frame, const TubularNeighborhood& tube,
                            const CostConfig& cost) {
    cost.validate();
    CostParts parts;
    const int nt = traj.n_steps();
    double acc = 0.0;
    for (int n = 0; n <= nt; ++n)
        acc += time_weight(n, nt) * control.norm_sq_level(n, grid.dx, grid.dy);
    parts.control = -0.5 * cost.alpha * acc * traj.dt;

    const State2D& uT = traj.states.back();
    const double ds = tube.ds();
    double curve = 0.0;
    for (int k = 0; k <= tube.n_s; ++k) {
        const double s = static_cast<double>(k) * ds;
        const Vec2 x = deformed_point(frame, map, {s, 0.0});
        const double H = bilinear_interpolate(grid, uT.h, x[0], x[1]);
        curve += ((k == 0 || k == tube.n_s) ? 0.5 : 1.0) * H * H;
    }
    parts.terminal = curve * ds;
    return parts;
}

namespace detail {

/// Second-order d/dx of a nodal field, one-sided at the ends.
inline double ddx(const std::vector<double>& f, int i, int n, double dx) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
    return (f[i + 1] - f[i - 1]) / (2.0 * dx);
}

inline double ddx_2d(const std::vector<double>& f, const Grid2D& g, int i, int j) {
    if (i == 0)
        return (-3.0 * f[g.index(0, j)] + 4.0 * f[g.index(1, j)] - f[g.index(2, j)]) /
               (2.0 * g.dx);
    if (i == g.nx - 1)
        return (3.0 * f[g.index(g.nx - 1, j)] - 4.0 * f[g.index(g.nx - 2, j)] +
                f[g.index(g.nx - 3, j)]) /
               (2.0 * g.dx);
    return (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) / (2.0 * g.dx);
}

inline double ddy_2d(const std::vector<double>& f, const Grid2D& g, int i, int j) {
    if (j == 0)
        return (-3.0 * f[g.index(i, 0)] + 4.0 * f[g.index(i, 1)] - f[g.index(i, 2)]) /
               (2.0 * g.dy);
    if (j == g.ny - 1)
        return (3.0 * f[g.index(i, g.ny - 1)] - 4.0 * f[g.index(i, g.ny - 2)] +
                f[g.index(i, g.ny - 3)]) /
               (2.0 * g.dy);
    return (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]) / (2.0 * g.dy);
}

} // namespace detail

/// Pointwise Hamiltonian density H(u, xi, q) = -(alpha/2)|xi|^2 - q . div F(u) + q . B xi
/// at one time level; div F(u) by second-order differences (one-sided at walls).
inline std::vector<double> hamiltonian_density(const Grid1D& grid, const PhysicsParams& phys,
                                               const State1D& u, const ControlField1D& control,
                                               int level, const Adjoint1D& q, double alpha) {
    const int n = grid.n_nodes;
    std::vector<double> f1(n), f2(n), out(n);
    for (int i = 0; i < n; ++i) {
        const Vec2 f = flux_1d(u.h[i], u.hu[i], phys.g);
        f1[i] = f[0];
        f2[i] = f[1];
    }
    for (int i = 0; i < n; ++i) {
        const double div1 = detail::ddx(f1, i, n, grid.dx);
        const double div2 = detail::ddx(f2, i, n, grid.dx);
        const double xi = control.at_node(level, i);
        out[i] = -0.5 * alpha * xi * xi - (q.h[i] * div1 + q.hu[i] * div2) + q.hu[i] * xi;
    }
    return out;
}

inline std::vector<double> hamiltonian_density(const Grid2D& grid, const PhysicsParams& phys,
                                               const State2D& u, const ControlField2D& control,
                                               int level, const Adjoint2D& q, double alpha) {
    const int nn = grid.size();
    std::vector<double> fx1(nn), fx2(nn), fx3(nn), fy1(nn), fy2(nn), fy3(nn), out(nn);
    for (int k = 0; k < nn; ++k) {
        const Vec3 fx = flux_2d_x(u.h[k], u.hu[k], u.hv[k], phys.g);
        const Vec3 fy = flux_2d_y(u.h[k], u.hu[k], u.hv[k], phys.g);
        fx1[k] = fx[0]; fx2[k] = fx[1]; fx3[k] = fx[2];
        fy1[k] = fy[0]; fy2[k] = fy[1]; fy3[k] = fy[2];
    }
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            const double div1 = detail::ddx_2d(fx1, grid, i, j) + detail::ddy_2d(fy1, grid, i, j);
            const double div2 = detail::ddx_2d(fx2, grid, i, j) + detail::ddy_2d(fy2, grid, i, j);
            const double div3 = detail::ddx_2d(fx3, grid, i, j) + detail::ddy_2d(fy3, grid, i, j);
            const double xi_x = control.fx_at(level, i, j);
            const double xi_y = control.fy_at(level, i, j);
            out[k] = -0.5 * alpha * (xi_x * xi_x + xi_y * xi_y) -
                     (q.h[k] * div1 + q.hu[k] * div2 + q.hv[k] * div3) +
                     (q.hu[k] * xi_x + q.hv[k] * xi_y);
        }
    return out;
}

/// Control gradient -alpha xi + B* q on omega (zero outside), every time level.
inline ControlField1D grad_xi(const ControlField1D& control, const AdjointTrajectory1D& adj,
                              double alpha) {
    ControlField1D g(control.region, control.n_levels() - 1);
    for (int n = 0; n < control.n_levels(); ++n)
        for (int i = control.region.i_lo; i <= control.region.i_hi; ++i) {
            const int k = i - control.region.i_lo;
            g.values[n][k] = -alpha * control.values[n][k] + adj.at(n).hu[i];
        }
    return g;
}

inline ControlField2D grad_xi(const ControlField2D& control, const AdjointTrajectory2D& adj,
                              const Grid2D& grid, double alpha) {
    ControlField2D g(control.region, control.n_levels() - 1);
    for (int n = 0; n < control.n_levels(); ++n)
        for (int j = control.region.j_lo; j <= control.region.j_hi; ++j)
            for (int i = control.region.i_lo; i <= control.region.i_hi; ++i) {
                const int m = control.region.masked_index(i, j);
                const int k = grid.index(i, j);
                g.fx[n][m] = -alpha * control.fx[n][m] + adj.at(n).hu[k];
                g.fy[n][m] = -alpha * control.fy[n][m] + adj.at(n).hv[k];
            }
    return g;
}

/// 1D geometric gradient L_eta = -int_0^T int_Omega (div w) H(u, xi, q) dx dt,
/// space and time by trapezoid.
inline double grad_eta_1d(const Grid1D& grid, const PhysicsParams& phys,
                          const Trajectory1D& traj, const ControlField1D& control,
                          const AdjointTrajectory1D& adj, const PiecewiseQuadraticMap& map,
                          double alpha) {
    const int nt = traj.n_steps();
    std::vector<double> divw(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) divw[i] = div_w_1d(map, grid.x(i));

    double total = 0.0;
    std::vector<double> integrand(grid.n_nodes);
    for (int n = 0; n <= nt; ++n) {
        const std::vector<double> ham =
            hamiltonian_density(grid, phys, traj.at(n), control, n, adj.at(n), alpha);
        for (int i = 0; i < grid.n_nodes; ++i) integrand[i] = divw[i] * ham[i];
        total += time_weight(n, nt) * trapezoid_integral(grid, integrand);
    }
    return -total * traj.dt;
}

/// 2D geometric gradient with rho = 0, per amplitude a_r:
///   L_r = -int_0^T int_{S0} d(det grad X)/da_r (y) * H(u,xi,q)(X(y)) dy dt
///       + int_0^T int_{S0} q(X(y)) . div_y[ F(u(X(y))) R M_r(y) ] dy dt,
/// M_r = d(cof grad X)/da_r = d/da_r((div X) I - grad X^T); the divergence is
/// taken in reference tube coordinates by central differences of step fd_step
/// (one-sided at the curve ends), and R carries a rotated frame into the
/// reference coordinates. Both terms use the immersed tube quadrature; time by
/// trapezoid.
struct GradEta2DWorkspace {
    int n_t = 8;
    double fd_step = 0.0;   // 0: use ds/2
};

inline std::array<double, 4> grad_eta_2d(const Grid2D& grid, const PhysicsParams& phys,
                                         const Trajectory2D& traj, const ControlField2D& control,
                                         const AdjointTrajectory2D& adj,
                                         const DeformationMap2D& map, const CurveFrame& frame,
                                         const TubularNeighborhood& tube, double alpha,
                                         const GradEta2DWorkspace& ws = {}) {
    const int nt = traj.n_steps();
    const double h = ws.fd_step > 0.0 ? ws.fd_step : 0.5 * tube.ds();
    const double ell = map.ell();

    // M_r rotated into reference coordinates, R * d(cof grad X)/d a_r (y local).
    auto rotated_cof_partial = [&](const Vec2& y, int r) -> Mat2 {
        const Mat2 dG = map.grad_partial(y, r);
        const Mat2 M{{{dG[1][1], -dG[1][0]}, {-dG[0][1], dG[0][0]}}};
        Mat2 out{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out[i][j] = frame.R[i][0] * M[0][j] + frame.R[i][1] * M[1][j];
        return out;
    };

    // A_r(y) = F(u(X(y))) * (R M_r(y)), a 3x2 matrix field over the tube.
    auto matrix_field = [&](const State2D& u, const Vec2& y, int r) -> std::array<Vec2, 3> {
        const Vec2 x = deformed_point(frame, map, y);
        const double H = bilinear_interpolate(grid, u.h, x[0], x[1]);
        const double qx = bilinear_interpolate(grid, u.hu, x[0], x[1]);
        const double qy = bilinear_interpolate(grid, u.hv, x[0], x[1]);
        const Vec3 fx = flux_2d_x(H, qx, qy, phys.g);
        const Vec3 fy = flux_2d_y(H, qx, qy, phys.g);
        const Mat2 M = rotated_cof_partial(y, r);
        std::array<Vec2, 3> A{};
        const double F[3][2] = {{fx[0], fy[0]}, {fx[1], fy[1]}, {fx[2], fy[2]}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j)
                A[i][j] = F[i][0] * M[0][j] + F[i][1] * M[1][j];
        return A;
    };

    std::array<double, 4> grad{0.0, 0.0, 0.0, 0.0};

    for (int n = 0; n <= nt; ++n) {
        const State2D& u = traj.at(n);
        const Adjoint2D& q = adj.at(n);
        const std::vector<double> ham =
            hamiltonian_density(grid, phys, u, control, n, q, alpha);
        const double wt = time_weight(n, nt) * traj.dt;

        for (int r = 1; r <= 4; ++r) {
            const double term1 = immersed_quadrature(
                [&](double s, double t) {
                    const Vec2 y{s, t};
                    const Vec2 x = deformed_point(frame, map, y);
                    return map.det_partial(y, r) *
                           bilinear_interpolate(grid, ham, x[0], x[1]);
                },
                tube, ws.n_t);

            const double term2 = immersed_quadrature(
                [&](double s, double t) {
                    // div_y A: d/ds of column 0 (one-sided at the curve ends)
                    // plus d/dt of column 1.
                    std::array<double, 3> dAds{}, dAdt{};
                    if (s - h < 0.0) {
                        const auto a0 = matrix_field(u, {s, t}, r);
                        const auto a1 = matrix_field(u, {s + h, t}, r);
                        const auto a2 = matrix_field(u, {s + 2.0 * h, t}, r);
                        for (int i = 0; i < 3; ++i)
                            dAds[i] = (-3.0 * a0[i][0] + 4.0 * a1[i][0] - a2[i][0]) / (2.0 * h);
                    } else if (s + h > ell) {
                        const auto a0 = matrix_field(u, {s, t}, r);
                        const auto a1 = matrix_field(u, {s - h, t}, r);
                        const auto a2 = matrix_field(u, {s - 2.0 * h, t}, r);
                        for (int i = 0; i < 3; ++i)
                            dAds[i] = (3.0 * a0[i][0] - 4.0 * a1[i][0] + a2[i][0]) / (2.0 * h);
                    } else {
                        const auto ap = matrix_field(u, {s + h, t}, r);
                        const auto am = matrix_field(u, {s - h, t}, r);
                        for (int i = 0; i < 3; ++i) dAds[i] = (ap[i][0] - am[i][0]) / (2.0 * h);
                    }
                    const auto bp = matrix_field(u, {s, t + h}, r);
                    const auto bm = matrix_field(u, {s, t - h}, r);
                    for (int i = 0; i < 3; ++i) dAdt[i] = (bp[i][1] - bm[i][1]) / (2.0 * h);

                    const Vec2 x = deformed_point(frame, map, {s, t});
                    const double qv[3] = {bilinear_interpolate(grid, q.h, x[0], x[1]),
                                          bilinear_interpolate(grid, q.hu, x[0], x[1]),
                                          bilinear_interpolate(grid, q.hv, x[0], x[1])};
                    double acc = 0.0;
                    for (int i = 0; i < 3; ++i) acc += qv[i] * (dAds[i] + dAdt[i]);
                    return acc;
                },
                tube, ws.n_t);

            grad[r - 1] += wt * (-term1 + term2);
        }
    }
    return grad;
}

} // namespace swave
