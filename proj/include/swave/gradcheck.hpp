#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "swave/problem.hpp"

namespace swave {

struct GradCheckRow {
    std::string component;
    double fd_value = 0.0;
    double adjoint_value = 0.0;
    double rel_error = 0.0;
};

namespace detail {

/// Deterministic standard normals (Box-Muller over mt19937_64), so the check
/// is reproducible across platforms.
class NormalDraw {
public:
    explicit NormalDraw(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        const double u1 = std::max(uni_(rng_), 1e-300);
        const double u2 = uni_(rng_);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

inline double rel_err(double fd, double adj) {
    const double denom = std::max(std::abs(fd), std::abs(adj));
    return denom > 0.0 ? std::abs(fd - adj) / denom : 0.0;
}

} // namespace detail

/// Adjoint xi-gradient vs central FD of the cost in k seeded unit directions
/// on omega x (0,T), plus the eta component (FD of the terminal trace only;
/// the state does not depend on eta). Pairings use the L2(omega x (0,T))
/// trapezoid inner product matching the cost quadrature.
inline std::vector<GradCheckRow> grad_check_1d(const Problem1D& problem,
                                               const std::vector<double>& z, int k_directions,
                                               std::uint64_t seed, double eps_xi,
                                               double eps_eta) {
    std::vector<GradCheckRow> rows;
    const Evaluation base = problem.evaluate(z, true);
    if (!base.feasible) throw ParameterError("grad_check_1d: infeasible base point");

    ControlField1D xi, gxi;
    double eta, geta;
    problem.unpack(z, xi, eta);
    problem.unpack(base.grad, gxi, geta);

    const int nt = problem.solver.nt;
    const int nm = problem.region.n_masked();
    const double dt = problem.solver.dt();

    detail::NormalDraw draw(seed);
    for (int d = 0; d < k_directions; ++d) {
        ControlField1D chi(problem.region, nt);
        double nrm = 0.0;
        for (int n = 0; n <= nt; ++n)
            for (int k = 0; k < nm; ++k) {
                chi.values[n][k] = draw();
                nrm += chi.values[n][k] * chi.values[n][k];
            }
        nrm = std::sqrt(nrm);
        for (int n = 0; n <= nt; ++n)
            for (int k = 0; k < nm; ++k) chi.values[n][k] /= nrm;

        auto shifted = [&](double sgn) {
            ControlField1D x2 = xi;
            for (int n = 0; n <= nt; ++n)
                for (int k = 0; k < nm; ++k)
                    x2.values[n][k] += sgn * eps_xi * chi.values[n][k];
            return problem.evaluate(problem.pack(x2, eta), false).cost;
        };
        const double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * eps_xi);

        double pair = 0.0;
        for (int n = 0; n <= nt; ++n) {
            double lvl = 0.0;
            for (int k = 0; k < nm; ++k)
                lvl += problem.region.weight(k) * gxi.values[n][k] * chi.values[n][k];
            pair += time_weight(n, nt) * lvl;
        }
        pair *= problem.grid.dx * dt;

        rows.push_back({"xi_dir_" + std::to_string(d), fd, pair, detail::rel_err(fd, pair)});
    }

    // eta enters the cost only through the terminal trace; reuse one trajectory.
    SolveDiagnostics diag;
    const Trajectory1D traj =
        solve_forward_1d(problem.grid, problem.phys, problem.solver, xi, problem.H_init,
                         problem.v_init, &diag);
    const double jp =
        cost_value(problem.grid, traj, xi, eta + eps_eta, problem.cost).total();
    const double jm =
        cost_value(problem.grid, traj, xi, eta - eps_eta, problem.cost).total();
    const double fd_eta = (jp - jm) / (2.0 * eps_eta);
    rows.push_back({"eta", fd_eta, geta, detail::rel_err(fd_eta, geta)});
    return rows;
}

/// 2D analogue: k xi-directions (both force components) and the four
/// curvature amplitudes; the amplitude FD re-evaluates the terminal curve
/// integral along the perturbed curve on the unchanged trajectory.
inline std::vector<GradCheckRow> grad_check_2d(const Problem2D& problem,
                                               const std::vector<double>& z, int k_directions,
                                               std::uint64_t seed, double eps_xi,
                                               double eps_a) {
    std::vector<GradCheckRow> rows;
    const Evaluation base = problem.evaluate(z, true);
    if (!base.feasible) throw ParameterError("grad_check_2d: infeasible base point");

    ControlField2D xi, gxi;
    std::array<double, 4> a, ga;
    problem.unpack(z, xi, a);
    problem.unpack(base.grad, gxi, ga);

    const int nt = problem.solver.nt;
    const int nm = problem.region.n_masked();
    const double dt = problem.solver.dt();

    detail::NormalDraw draw(seed);
    for (int d = 0; d < k_directions; ++d) {
        ControlField2D chi(problem.region, nt);
        double nrm = 0.0;
        for (int n = 0; n <= nt; ++n)
            for (int k = 0; k < nm; ++k) {
                chi.fx[n][k] = draw();
                chi.fy[n][k] = draw();
                nrm += chi.fx[n][k] * chi.fx[n][k] + chi.fy[n][k] * chi.fy[n][k];
            }
        nrm = std::sqrt(nrm);
        for (int n = 0; n <= nt; ++n)
            for (int k = 0; k < nm; ++k) {
                chi.fx[n][k] /= nrm;
                chi.fy[n][k] /= nrm;
            }

        auto shifted = [&](double sgn) {
            ControlField2D x2 = xi;
            for (int n = 0; n <= nt; ++n)
                for (int k = 0; k < nm; ++k) {
                    x2.fx[n][k] += sgn * eps_xi * chi.fx[n][k];
                    x2.fy[n][k] += sgn * eps_xi * chi.fy[n][k];
                }
            return problem.evaluate(problem.pack(x2, a), false).cost;
        };
        const double fd = (shifted(1.0) - shifted(-1.0)) / (2.0 * eps_xi);

        double pair = 0.0;
        for (int n = 0; n <= nt; ++n) {
            double lvl = 0.0;
            for (int j = problem.region.j_lo; j <= problem.region.j_hi; ++j)
                for (int i = problem.region.i_lo; i <= problem.region.i_hi; ++i) {
                    const int k = problem.region.masked_index(i, j);
                    lvl += problem.region.weight(i, j) *
                           (gxi.fx[n][k] * chi.fx[n][k] + gxi.fy[n][k] * chi.fy[n][k]);
                }
            pair += time_weight(n, nt) * lvl;
        }
        pair *= problem.grid.dx * problem.grid.dy * dt;
        rows.push_back({"xi_dir_" + std::to_string(d), fd, pair, detail::rel_err(fd, pair)});
    }

    SolveDiagnostics diag;
    const Trajectory2D traj =
        solve_forward_2d(problem.grid, problem.phys, problem.solver, xi, problem.H_init,
                         problem.vx_init, problem.vy_init, &diag);
    for (int r = 0; r < 4; ++r) {
        auto ap = a, am = a;
        ap[r] += eps_a;
        am[r] -= eps_a;
        const auto mp = build_map_2d(problem.curvature_of(ap), problem.tube);
        const auto mm = build_map_2d(problem.curvature_of(am), problem.tube);
        const double jp = cost_value(problem.grid, traj, xi, mp, problem.frame, problem.tube,
                                     problem.cost)
                              .total();
        const double jm = cost_value(problem.grid, traj, xi, mm, problem.frame, problem.tube,
                                     problem.cost)
                              .total();
        const double fd = (jp - jm) / (2.0 * eps_a);
        rows.push_back(
            {"a" + std::to_string(r + 1), fd, ga[r], detail::rel_err(fd, ga[r])});
    }
    return rows;
}

} // namespace swave
