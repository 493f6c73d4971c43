#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "support/linearized_forward.hpp"
#include "swave/adjoint.hpp"
#include "swave/forward.hpp"
#include "swave/map1d.hpp"
#include "swave/quadrature.hpp"

using namespace swave;

namespace {

Trajectory1D bump_trajectory(const Grid1D& grid, const PhysicsParams& phys, int nt, double T,
                             double amp = 0.05, double center = 25.0, double width = 4.0) {
    SolverConfig cfg{nt, T, 1.0};
    ControlField1D xi(ControlRegion1D(grid, 0.0, 1.2), nt);
    std::vector<double> H0(grid.n_nodes), v0(grid.n_nodes, 0.0);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double r = (grid.x(i) - center) / width;
        H0[i] = phys.H0 + amp * std::exp(-0.5 * r * r);
    }
    return solve_forward_1d(grid, phys, cfg, xi, H0, v0);
}

} // namespace

TEST_CASE("gaussian dirac approximation") {
    Grid1D grid(60.0, 301);

    SECTION("dense-quadrature mass is one within 1e-6") {
        // Oracle: dense trapezoid of the closed form, independent of the grid.
        const double x0 = 30.4;
        const double sigma = grid.dx / 4.0;
        const int N = 400000;
        double acc = 0.0;
        const double h = grid.length / N;
        for (int k = 0; k <= N; ++k) {
            const double x = k * h;
            const double w = (k == 0 || k == N) ? 0.5 : 1.0;
            acc += w * std::exp(-0.5 * (x - x0) * (x - x0) / (sigma * sigma));
        }
        acc *= h / (sigma * std::sqrt(2.0 * M_PI));
        CHECK(acc == Catch::Approx(1.0).margin(1e-6));

        // And the nodal field is the same closed form.
        const auto d = gaussian_dirac_1d(x0, grid);
        for (int i = 150; i < 155; ++i) {
            const double expect = std::exp(-0.5 * std::pow((grid.x(i) - x0) / sigma, 2)) /
                                  (sigma * std::sqrt(2.0 * M_PI));
            CHECK(d[i] == Catch::Approx(expect).margin(1e-14));
        }
    }

    SECTION("at least 95% of the discrete mass lies within dx/2 of the center") {
        for (double x0 : {30.0, 30.1, 30.05, 17.37}) {
            const auto d = gaussian_dirac_1d(x0, grid);
            double total = 0.0, inside = 0.0;
            for (int i = 0; i < grid.n_nodes; ++i) {
                const double w = (i == 0 || i == grid.n_nodes - 1) ? 0.5 : 1.0;
                total += w * d[i] * grid.dx;
                if (std::abs(grid.x(i) - x0) <= grid.dx / 2.0 + 1e-12)
                    inside += w * d[i] * grid.dx;
            }
            CHECK(inside / total >= 0.95);
        }
    }

    SECTION("symmetric about an on-node center") {
        const auto d = gaussian_dirac_1d(30.0, grid);   // node 150
        for (int off = 1; off <= 3; ++off)
            CHECK(d[150 + off] == Catch::Approx(d[150 - off]).epsilon(1e-9).margin(1e-30));
    }

    SECTION("x0 outside the open interval throws") {
        CHECK_THROWS_AS(gaussian_dirac_1d(0.0, grid), ParameterError);
        CHECK_THROWS_AS(gaussian_dirac_1d(60.0, grid), ParameterError);
    }
}

TEST_CASE("1d terminal condition") {
    Grid1D grid(60.0, 301);
    State1D uT(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) uT.h[i] = 1.5;

    SECTION("momentum component vanishes (phi depends on u1 only)") {
        const auto map = build_map_1d(30.4, 60.0);
        const auto q = terminal_condition_1d(uT, 30.4, map, grid);
        for (double v : q.hu) CHECK(v == 0.0);
    }

    SECTION("at eta = L/2 the divisor is one: q1 is the unit-mass Gaussian") {
        const auto map = build_map_1d(30.0, 60.0);
        const auto q = terminal_condition_1d(uT, 30.0, map, grid);
        const auto raw = gaussian_dirac_1d(30.0, grid);
        const double z = dirac_lattice_mass(grid, raw);
        for (int i = 145; i <= 155; ++i)
            CHECK(q.h[i] == Catch::Approx(raw[i] / z).margin(1e-14));
    }

    SECTION("discrete integral equals L^2 / (4 eta (L - eta))") {
        for (double eta : {30.4, 22.1, 41.0}) {
            const auto map = build_map_1d(eta, 60.0);
            const auto q = terminal_condition_1d(uT, eta, map, grid);
            const double expect = 60.0 * 60.0 / (4.0 * eta * (60.0 - eta));
            CHECK(trapezoid_integral(grid, q.h) == Catch::Approx(expect).epsilon(1e-4));
        }
    }
}

TEST_CASE("1d adjoint solve") {
    Grid1D grid(60.0, 101);
    PhysicsParams phys;
    const Trajectory1D traj = bump_trajectory(grid, phys, 200, 5.0);

    SECTION("zero terminal condition gives the zero adjoint") {
        TerminalCondition1D qT(grid.n_nodes);
        const auto adj = solve_adjoint_1d(grid, phys, traj, qT);
        for (const auto& lvl : adj.levels)
            for (int i = 0; i < grid.n_nodes; ++i) {
                CHECK(lvl.h[i] == 0.0);
                CHECK(lvl.hu[i] == 0.0);
            }
    }

    SECTION("linearity: scaling and superposition") {
        TerminalCondition1D qa(grid.n_nodes), qb(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i) {
            qa.h[i] = std::exp(-0.5 * std::pow((grid.x(i) - 35.0) / 3.0, 2));
            qb.hu[i] = std::sin(M_PI * grid.x(i) / 60.0);
        }
        const auto A = solve_adjoint_1d(grid, phys, traj, qa);
        const auto B = solve_adjoint_1d(grid, phys, traj, qb);

        TerminalCondition1D q2 = qa;
        for (auto& v : q2.h) v *= 2.0;
        for (auto& v : q2.hu) v *= 2.0;
        const auto A2 = solve_adjoint_1d(grid, phys, traj, q2);

        TerminalCondition1D qs(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i) {
            qs.h[i] = qa.h[i] + qb.h[i];
            qs.hu[i] = qa.hu[i] + qb.hu[i];
        }
        const auto S = solve_adjoint_1d(grid, phys, traj, qs);

        double worst = 0.0;
        for (size_t n = 0; n < A.levels.size(); ++n)
            for (int i = 0; i < grid.n_nodes; ++i) {
                worst = std::max(worst, std::abs(A2.levels[n].h[i] - 2.0 * A.levels[n].h[i]));
                worst = std::max(worst,
                                 std::abs(S.levels[n].h[i] - A.levels[n].h[i] - B.levels[n].h[i]));
                worst = std::max(worst, std::abs(S.levels[n].hu[i] - A.levels[n].hu[i] -
                                                 B.levels[n].hu[i]));
            }
        CHECK(worst <= 1e-12);
    }

    SECTION("boundary values are exactly zero at every level") {
        TerminalCondition1D qT(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i)
            qT.h[i] = std::exp(-0.5 * std::pow((grid.x(i) - 30.0) / 2.0, 2));
        const auto adj = solve_adjoint_1d(grid, phys, traj, qT);
        for (const auto& lvl : adj.levels) {
            CHECK(lvl.h[0] == 0.0);
            CHECK(lvl.h[grid.n_nodes - 1] == 0.0);
            CHECK(lvl.hu[0] == 0.0);
            CHECK(lvl.hu[grid.n_nodes - 1] == 0.0);
        }
    }

    SECTION("non-finite trajectory raises an instability error") {
        Trajectory1D bad = traj;
        bad.states[50].h[40] = std::nan("");
        TerminalCondition1D qT(grid.n_nodes);
        qT.h[50] = 1.0;
        CHECK_THROWS_AS(solve_adjoint_1d(grid, phys, bad, qT), InstabilityError);
    }
}

TEST_CASE("1d duality: adjoint pairing matches the linearized forward solve") {
    // <q(T), v(T)> vs int int q . f, smooth data, coarse grid (n=101, nt=400).
    // T and placement keep the adjoint cone away from the walls, where the
    // q = 0 condition is not the admissible inviscid dual condition.
    Grid1D grid(60.0, 101);
    PhysicsParams phys;
    const double T = 4.0;
    const int nt = 400;
    const Trajectory1D base = bump_trajectory(grid, phys, nt, T, 0.05, 30.0, 4.0);

    TerminalCondition1D qT(grid.n_nodes);
    for (int i = 0; i < grid.n_nodes; ++i) {
        const double x = grid.x(i);
        qT.h[i] = std::exp(-0.5 * std::pow((x - 33.0) / 4.0, 2));
        qT.hu[i] = 0.5 * std::exp(-0.5 * std::pow((x - 28.0) / 4.0, 2));
    }
    qT.h[0] = qT.h[grid.n_nodes - 1] = 0.0;
    qT.hu[0] = qT.hu[grid.n_nodes - 1] = 0.0;

    const auto adj = solve_adjoint_1d(grid, phys, base, qT);

    const swave_test::Source1D f = [](double x, double t) -> Vec2 {
        const double pulse = std::exp(-0.5 * std::pow((x - 27.0) / 3.0, 2));
        return {0.0, 0.02 * pulse * std::sin(M_PI * t / 4.0)};
    };
    const Trajectory1D v = swave_test::solve_linearized_1d(grid, phys, base, f);

    auto inner = [&](const State1D& a, const State1D& b) {
        std::vector<double> prod(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i) prod[i] = a.h[i] * b.h[i] + a.hu[i] * b.hu[i];
        return trapezoid_integral(grid, prod);
    };

    const double lhs = inner(adj.levels[nt], v.states[nt]);
    double rhs = 0.0;
    for (int n = 0; n <= nt; ++n) {
        State1D fn(grid.n_nodes);
        for (int i = 0; i < grid.n_nodes; ++i) {
            const Vec2 s = f(grid.x(i), base.dt * n);
            fn.h[i] = s[0];
            fn.hu[i] = s[1];
        }
        rhs += time_weight(n, nt) * inner(adj.levels[n], fn);
    }
    rhs *= base.dt;

    CHECK(std::abs(lhs - rhs) / std::abs(lhs) <= 0.02);
}
