#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "swave/errors.hpp"
#include "swave/grid.hpp"

namespace swave {

/// Linear interpolation of a nodal field at x in [0, L]. Exact at nodes and for
/// affine fields.
inline double linear_interpolate(const Grid1D& grid, const std::vector<double>& field, double x) {
    const double tol = 1e-12 * grid.length;
    if (x < -tol || x > grid.length + tol)
        throw OutOfRangeError("linear_interpolate: x = " + std::to_string(x) + " outside [0, L]");
    double r = std::clamp(x / grid.dx, 0.0, static_cast<double>(grid.n_nodes - 1));
    int i = std::min(static_cast<int>(r), grid.n_nodes - 2);
    double t = r - static_cast<double>(i);
    return (1.0 - t) * field[i] + t * field[i + 1];
}

/// Bilinear interpolation of a nodal field at p = (x, y) in [0,Lx] x [0,Ly].
/// Standard 4-node combination; exact for fields affine in x and y.
inline double bilinear_interpolate(const Grid2D& grid, const std::vector<double>& field,
                                   double x, double y) {
    const double tx = 1e-12 * grid.length_x;
    const double ty = 1e-12 * grid.length_y;
    if (x < -tx || x > grid.length_x + tx || y < -ty || y > grid.length_y + ty)
        throw OutOfRangeError("bilinear_interpolate: point (" + std::to_string(x) + ", " +
                              std::to_string(y) + ") outside the domain");
    double rx = std::clamp(x / grid.dx, 0.0, static_cast<double>(grid.nx - 1));
    double ry = std::clamp(y / grid.dy, 0.0, static_cast<double>(grid.ny - 1));
    int i = std::min(static_cast<int>(rx), grid.nx - 2);
    int j = std::min(static_cast<int>(ry), grid.ny - 2);
    double s = rx - static_cast<double>(i);
    double t = ry - static_cast<double>(j);
    const double f00 = field[grid.index(i, j)];
    const double f10 = field[grid.index(i + 1, j)];
    const double f01 = field[grid.index(i, j + 1)];
    const double f11 = field[grid.index(i + 1, j + 1)];
    return (1.0 - s) * (1.0 - t) * f00 + s * (1.0 - t) * f10 + (1.0 - s) * t * f01 + s * t * f11;
}

} // namespace swave
