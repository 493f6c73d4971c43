#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "swave/adjoint.hpp"
#include "swave/control.hpp"
#include "swave/curve.hpp"
#include "swave/errors.hpp"
#include "swave/forward.hpp"
#include "swave/gradient.hpp"
#include "swave/grid.hpp"
#include "swave/map1d.hpp"
#include "swave/optimizer.hpp"

namespace swave {

/// 1D optimal-control problem over the stacked variable
/// z = [xi at levels 0..nt over the masked nodes, eta].
class Problem1D {
public:
    Grid1D grid;
    PhysicsParams phys;
    SolverConfig solver;
    ControlRegion1D region;
    CostConfig cost;
    std::vector<double> H_init, v_init;
    double eta_margin = 0.02;   // feasible interval [margin L, (1-margin) L]

    Problem1D(const Grid1D& g, const PhysicsParams& p, const SolverConfig& s,
              const ControlRegion1D& r, const CostConfig& c)
        : grid(g), phys(p), solver(s), region(r), cost(c),
          H_init(g.n_nodes, p.H0), v_init(g.n_nodes, 0.0) {}

    int n_xi() const { return (solver.nt + 1) * region.n_masked(); }
    int dim() const { return n_xi() + 1; }
    int n_geo() const { return 1; }

    std::vector<double> pack(const ControlField1D& xi, double eta) const {
        std::vector<double> z(dim());
        int m = 0;
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) z[m++] = xi.values[n][k];
        z[m] = eta;
        return z;
    }

    void unpack(const std::vector<double>& z, ControlField1D& xi, double& eta) const {
        xi = ControlField1D(region, solver.nt);
        int m = 0;
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) xi.values[n][k] = z[m++];
        eta = z[m];
    }

    std::vector<double> geo_values(const std::vector<double>& z) const { return {z.back()}; }

    std::vector<double> project(const std::vector<double>& z) const {
        std::vector<double> out = z;
        out.back() = std::clamp(out.back(), eta_margin * grid.length,
                                (1.0 - eta_margin) * grid.length);
        return out;
    }

    bool feasible_point(const std::vector<double>&) const { return true; }

    Evaluation evaluate(const std::vector<double>& z, bool need_gradient) const {
        Evaluation ev;
        ControlField1D xi;
        double eta;
        unpack(z, xi, eta);
        if (!(eta > 0.0) || !(eta < grid.length)) {
            ev.feasible = false;
            return ev;
        }

        SolveDiagnostics diag;
        Trajectory1D traj;
        try {
            traj = solve_forward_1d(grid, phys, solver, xi, H_init, v_init, &diag);
        } catch (const PositivityError&) {
            ev.feasible = false;
            return ev;
        }
        ev.parts = cost_value(grid, traj, xi, eta, cost);
        ev.cost = ev.parts.total();
        ev.cfl_max = diag.cfl_max;
        ev.froude_max = froude_diagnostic(traj, phys.g);
        if (!need_gradient) return ev;

        const PiecewiseQuadraticMap map = build_map_1d(eta, grid.length);
        const TerminalCondition1D qT =
            terminal_condition_1d(traj.states.back(), eta, map, grid);
        const AdjointTrajectory1D adj = solve_adjoint_1d(grid, phys, traj, qT);
        const ControlField1D gxi = grad_xi(xi, adj, cost.alpha);
        const double geta = grad_eta_1d(grid, phys, traj, xi, adj, map, cost.alpha);
        ev.grad = pack(gxi, geta);
        return ev;
    }
};

/// 2D problem over z = [xi_x levels x masked, xi_y levels x masked, a1..a4].
class Problem2D {
public:
    Grid2D grid;
    PhysicsParams phys;
    SolverConfig solver;
    ControlRegion2D region;
    CostConfig cost;
    TubularNeighborhood tube;
    CurveFrame frame;
    double frequency = 0.0;   // curvature basis frequency; 0 means 1/ell
    GradEta2DWorkspace grad_ws;
    std::vector<double> H_init, vx_init, vy_init;

    Problem2D(const Grid2D& g, const PhysicsParams& p, const SolverConfig& s,
              const ControlRegion2D& r, const CostConfig& c, const TubularNeighborhood& t,
              const CurveFrame& fr)
        : grid(g), phys(p), solver(s), region(r), cost(c), tube(t), frame(fr),
          H_init(g.size(), p.H0), vx_init(g.size(), 0.0), vy_init(g.size(), 0.0) {}

    int n_block() const { return (solver.nt + 1) * region.n_masked(); }
    int dim() const { return 2 * n_block() + 4; }
    int n_geo() const { return 4; }

    CurvatureParam curvature_of(const std::array<double, 4>& a) const {
        return make_curvature(tube.ell, a, frequency);
    }

    std::vector<double> pack(const ControlField2D& xi, const std::array<double, 4>& a) const {
        std::vector<double> z(dim());
        int m = 0;
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) z[m++] = xi.fx[n][k];
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) z[m++] = xi.fy[n][k];
        for (int r = 0; r < 4; ++r) z[m++] = a[r];
        return z;
    }

    void unpack(const std::vector<double>& z, ControlField2D& xi,
                std::array<double, 4>& a) const {
        xi = ControlField2D(region, solver.nt);
        int m = 0;
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) xi.fx[n][k] = z[m++];
        for (int n = 0; n <= solver.nt; ++n)
            for (int k = 0; k < region.n_masked(); ++k) xi.fy[n][k] = z[m++];
        for (int r = 0; r < 4; ++r) a[r] = z[m++];
    }

    std::vector<double> geo_values(const std::vector<double>& z) const {
        return {z[z.size() - 4], z[z.size() - 3], z[z.size() - 2], z[z.size() - 1]};
    }

    std::vector<double> project(const std::vector<double>& z) const { return z; }

    bool feasible_point(const std::vector<double>& z) const {
        std::array<double, 4> a{z[z.size() - 4], z[z.size() - 3], z[z.size() - 2],
                                z[z.size() - 1]};
        const CurvatureParam p = curvature_of(a);
        const double ds = tube.ds();
        for (int k = 0; k <= tube.n_s; ++k) {
            const double s = static_cast<double>(k) * ds;
            if (std::abs(tube.eps(s) * p.gamma(s)) >= 1.0) return false;
        }
        return true;
    }

    Evaluation evaluate(const std::vector<double>& z, bool need_gradient) const {
        Evaluation ev;
        ControlField2D xi;
        std::array<double, 4> a;
        unpack(z, xi, a);

        DeformationMap2D map;
        try {
            map = build_map_2d(curvature_of(a), tube);
        } catch (const GeometryError&) {
            ev.feasible = false;
            return ev;
        }

        SolveDiagnostics diag;
        Trajectory2D traj;
        try {
            traj = solve_forward_2d(grid, phys, solver, xi, H_init, vx_init, vy_init, &diag);
        } catch (const PositivityError&) {
            ev.feasible = false;
            return ev;
        }
        ev.parts = cost_value(grid, traj, xi, map, frame, tube, cost);
        ev.cost = ev.parts.total();
        ev.cfl_max = diag.cfl_max;
        ev.froude_max = froude_diagnostic(traj, phys.g);
        if (!need_gradient) return ev;

        const TerminalCondition2D qT =
            terminal_condition_2d(traj.states.back(), map, frame, tube, grid);
        const AdjointTrajectory2D adj = solve_adjoint_2d(grid, phys, traj, qT);
        const ControlField2D gxi = grad_xi(xi, adj, grid, cost.alpha);
        const std::array<double, 4> geta =
            grad_eta_2d(grid, phys, traj, xi, adj, map, frame, tube, cost.alpha, grad_ws);
        ev.grad = pack(gxi, geta);
        return ev;
    }
};

} // namespace swave
