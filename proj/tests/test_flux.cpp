#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "swave/flux.hpp"

using namespace swave;

TEST_CASE("flux_1d values") {
    const double g = 9.81;

    SECTION("rest state") {
        const Vec2 f = flux_1d(1.5, 0.0, g);
        CHECK(f[0] == 0.0);
        CHECK(f[1] == Catch::Approx(11.03625));   // (g/2) * 1.5^2
    }

    SECTION("matches the formula on random states") {
        std::mt19937 rng(123);
        std::uniform_real_distribution<double> uh(0.2, 3.0), uq(-2.0, 2.0);
        for (int k = 0; k < 50; ++k) {
            const double H = uh(rng), q = uq(rng);
            const Vec2 f = flux_1d(H, q, g);
            CHECK(f[0] == q);
            CHECK(f[1] == Catch::Approx(q * q / H + 0.5 * g * H * H).epsilon(1e-14));
        }
    }

    SECTION("nonpositive H throws") {
        CHECK_THROWS_AS(flux_1d(0.0, 1.0, g), PositivityError);
        CHECK_THROWS_AS(flux_1d(-1.0, 1.0, g), PositivityError);
    }
}

TEST_CASE("flux_jacobian_1d") {
    const double g = 9.81;

    SECTION("rest state gives [[0,1],[gH,0]]") {
        const Mat2 J = flux_jacobian_1d(1.5, 0.0, g);
        CHECK(J[0][0] == 0.0);
        CHECK(J[0][1] == 1.0);
        CHECK(J[1][0] == Catch::Approx(g * 1.5));
        CHECK(J[1][1] == 0.0);
    }

    SECTION("eigenvalues are v +- sqrt(gH)") {
        // Oracle: closed-form eigenvalues of a 2x2 matrix.
        std::mt19937 rng(321);
        std::uniform_real_distribution<double> uh(0.3, 2.5), uq(-1.5, 1.5);
        for (int k = 0; k < 50; ++k) {
            const double H = uh(rng), q = uq(rng), v = q / H;
            const Mat2 J = flux_jacobian_1d(H, q, g);
            const double tr = J[0][0] + J[1][1];
            const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
            const double disc = std::sqrt(tr * tr / 4.0 - det);
            const double l1 = tr / 2.0 - disc, l2 = tr / 2.0 + disc;
            CHECK(l1 == Catch::Approx(v - std::sqrt(g * H)).margin(1e-12));
            CHECK(l2 == Catch::Approx(v + std::sqrt(g * H)).margin(1e-12));
        }
    }

    SECTION("directional finite differences of F") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> uh(0.5, 2.0), uq(-1.0, 1.0);
        const double eps = 1e-6;
        for (int k = 0; k < 20; ++k) {
            const double H = uh(rng), q = uq(rng);
            const double wH = uq(rng), wq = uq(rng);
            const Vec2 fp = flux_1d(H + eps * wH, q + eps * wq, g);
            const Vec2 fm = flux_1d(H - eps * wH, q - eps * wq, g);
            const Mat2 J = flux_jacobian_1d(H, q, g);
            CHECK((fp[0] - fm[0]) / (2.0 * eps) ==
                  Catch::Approx(J[0][0] * wH + J[0][1] * wq).margin(1e-7));
            CHECK((fp[1] - fm[1]) / (2.0 * eps) ==
                  Catch::Approx(J[1][0] * wH + J[1][1] * wq).margin(1e-7));
        }
    }
}

TEST_CASE("flux_jacobian_2d matches directional finite differences") {
    const double g = 9.81;
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uh(0.5, 2.0), uq(-1.0, 1.0);
    const double eps = 1e-6;
    for (int k = 0; k < 30; ++k) {
        const double H = uh(rng), qx = uq(rng), qy = uq(rng);
        const double w[3] = {uq(rng), uq(rng), uq(rng)};
        const Vec3 fxp = flux_2d_x(H + eps * w[0], qx + eps * w[1], qy + eps * w[2], g);
        const Vec3 fxm = flux_2d_x(H - eps * w[0], qx - eps * w[1], qy - eps * w[2], g);
        const Vec3 fyp = flux_2d_y(H + eps * w[0], qx + eps * w[1], qy + eps * w[2], g);
        const Vec3 fym = flux_2d_y(H - eps * w[0], qx - eps * w[1], qy - eps * w[2], g);
        const Mat3 Jx = flux_jacobian_2d_x(H, qx, qy, g);
        const Mat3 Jy = flux_jacobian_2d_y(H, qx, qy, g);
        for (int i = 0; i < 3; ++i) {
            const double fdx = (fxp[i] - fxm[i]) / (2.0 * eps);
            const double fdy = (fyp[i] - fym[i]) / (2.0 * eps);
            CHECK(fdx == Catch::Approx(Jx[i][0] * w[0] + Jx[i][1] * w[1] + Jx[i][2] * w[2])
                             .margin(1e-6));
            CHECK(fdy == Catch::Approx(Jy[i][0] * w[0] + Jy[i][1] * w[1] + Jy[i][2] * w[2])
                             .margin(1e-6));
        }
    }
}
