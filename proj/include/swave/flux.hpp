#pragma once

#include <array>
#include <cmath>
#include <string>

#include "swave/errors.hpp"

namespace swave {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// 1D shallow-water flux: F(H, q) = (q, q^2/H + (g/2) H^2).
inline Vec2 flux_1d(double H, double q, double g) {
    if (!(H > 0.0))
        throw PositivityError("flux_1d: H = " + std::to_string(H) + " is not positive", -1, -1);
    return {q, q * q / H + 0.5 * g * H * H};
}

/// Jacobian of the 1D flux: rows [[0, 1], [-v^2 + gH, 2v]]; eigenvalues v ± sqrt(gH).
inline Mat2 flux_jacobian_1d(double H, double q, double g) {
    if (!(H > 0.0))
        throw PositivityError("flux_jacobian_1d: H = " + std::to_string(H) + " is not positive",
                              -1, -1);
    const double v = q / H;
    return {{{0.0, 1.0}, {-v * v + g * H, 2.0 * v}}};
}

/// 2D shallow-water fluxes for u = (H, Hv1, Hv2):
/// Fx = (qx, qx^2/H + (g/2)H^2, qx qy / H), Fy = (qy, qx qy / H, qy^2/H + (g/2)H^2).
inline Vec3 flux_2d_x(double H, double qx, double qy, double g) {
    if (!(H > 0.0))
        throw PositivityError("flux_2d_x: H is not positive", -1, -1);
    return {qx, qx * qx / H + 0.5 * g * H * H, qx * qy / H};
}

inline Vec3 flux_2d_y(double H, double qx, double qy, double g) {
    if (!(H > 0.0))
        throw PositivityError("flux_2d_y: H is not positive", -1, -1);
    return {qy, qx * qy / H, qy * qy / H + 0.5 * g * H * H};
}

/// Jacobians dFx/du and dFy/du of the 2D flux, as 3x3 matrices [i][l] = dF_i/du_l.
inline Mat3 flux_jacobian_2d_x(double H, double qx, double qy, double g) {
    const double vx = qx / H;
    const double vy = qy / H;
    return {{{0.0, 1.0, 0.0},
             {-vx * vx + g * H, 2.0 * vx, 0.0},
             {-vx * vy, vy, vx}}};
}

inline Mat3 flux_jacobian_2d_y(double H, double qx, double qy, double g) {
    const double vx = qx / H;
    const double vy = qy / H;
    return {{{0.0, 0.0, 1.0},
             {-vx * vy, vy, vx},
             {-vy * vy + g * H, 0.0, 2.0 * vy}}};
}

} // namespace swave
