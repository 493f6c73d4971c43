#pragma once

#include <vector>

#include "swave/grid.hpp"

namespace swave {

/// Composite trapezoid rule over the full 1D grid. Exact for affine fields.
inline double trapezoid_integral(const Grid1D& grid, const std::vector<double>& field) {
    double acc = 0.5 * (field.front() + field.back());
    for (int i = 1; i < grid.n_nodes - 1; ++i) acc += field[i];
    return acc * grid.dx;
}

/// Tensor-product trapezoid rule over the full 2D grid.
inline double trapezoid_integral(const Grid2D& grid, const std::vector<double>& field) {
    double acc = 0.0;
    for (int j = 0; j < grid.ny; ++j) {
        const double wj = (j == 0 || j == grid.ny - 1) ? 0.5 : 1.0;
        double row = 0.5 * (field[grid.index(0, j)] + field[grid.index(grid.nx - 1, j)]);
        for (int i = 1; i < grid.nx - 1; ++i) row += field[grid.index(i, j)];
        acc += wj * row;
    }
    return acc * grid.dx * grid.dy;
}

/// Trapezoid weight of time level n among levels 0..nt.
inline double time_weight(int n, int nt) { return (n == 0 || n == nt) ? 0.5 : 1.0; }

/// Trapezoid rule over tabulated values with uniform spacing h.
inline double trapezoid_tabulated(const std::vector<double>& values, double h) {
    if (values.size() < 2) return 0.0;
    double acc = 0.5 * (values.front() + values.back());
    for (size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
    return acc * h;
}

} // namespace swave
