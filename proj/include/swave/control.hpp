#pragma once

#include <cmath>
#include <vector>

#include "swave/errors.hpp"
#include "swave/grid.hpp"
#include "swave/quadrature.hpp"

namespace swave {

/// Control support omega = [xa, xb] as a contiguous node range; the indicator
/// operator B = 1_omega acts by masking.
struct ControlRegion1D {
    double xa = 0.0, xb = 0.0;
    int i_lo = 0, i_hi = -1;   // inclusive node range

    ControlRegion1D() = default;
    ControlRegion1D(const Grid1D& grid, double xa_, double xb_) : xa(xa_), xb(xb_) {
        if (!(xa <= xb) || xa < -1e-12 || xb > grid.length * (1.0 + 1e-12))
            throw ParameterError("ControlRegion1D: [xa, xb] must lie inside [0, L]");
        const double tol = 1e-9 * grid.dx;
        i_lo = grid.n_nodes;
        i_hi = -1;
        for (int i = 0; i < grid.n_nodes; ++i) {
            if (grid.x(i) >= xa - tol && grid.x(i) <= xb + tol) {
                i_lo = std::min(i_lo, i);
                i_hi = std::max(i_hi, i);
            }
        }
        if (i_hi < i_lo) throw ParameterError("ControlRegion1D: region contains no grid node");
    }

    int n_masked() const { return i_hi - i_lo + 1; }
    bool contains(int i) const { return i >= i_lo && i <= i_hi; }
    /// Trapezoid weight of masked node k within the sub-interval [x(i_lo), x(i_hi)].
    double weight(int k) const { return (k == 0 || k == n_masked() - 1) ? 0.5 : 1.0; }
};

/// omega = [xa, xb] x [ya, yb] as a logically rectangular node block.
struct ControlRegion2D {
    double xa = 0.0, xb = 0.0, ya = 0.0, yb = 0.0;
    int i_lo = 0, i_hi = -1, j_lo = 0, j_hi = -1;

    ControlRegion2D() = default;
    ControlRegion2D(const Grid2D& grid, double xa_, double xb_, double ya_, double yb_)
        : xa(xa_), xb(xb_), ya(ya_), yb(yb_) {
        if (!(xa <= xb) || !(ya <= yb))
            throw ParameterError("ControlRegion2D: degenerate rectangle");
        if (xa < -1e-12 || xb > grid.length_x * (1.0 + 1e-12) || ya < -1e-12 ||
            yb > grid.length_y * (1.0 + 1e-12))
            throw ParameterError("ControlRegion2D: rectangle must lie inside the domain");
        const double tolx = 1e-9 * grid.dx;
        const double toly = 1e-9 * grid.dy;
        i_lo = grid.nx; i_hi = -1; j_lo = grid.ny; j_hi = -1;
        for (int i = 0; i < grid.nx; ++i)
            if (grid.x(i) >= xa - tolx && grid.x(i) <= xb + tolx) {
                i_lo = std::min(i_lo, i);
                i_hi = std::max(i_hi, i);
            }
        for (int j = 0; j < grid.ny; ++j)
            if (grid.y(j) >= ya - toly && grid.y(j) <= yb + toly) {
                j_lo = std::min(j_lo, j);
                j_hi = std::max(j_hi, j);
            }
        if (i_hi < i_lo || j_hi < j_lo)
            throw ParameterError("ControlRegion2D: region contains no grid node");
    }

    int n_masked() const { return (i_hi - i_lo + 1) * (j_hi - j_lo + 1); }
    bool contains(int i, int j) const {
        return i >= i_lo && i <= i_hi && j >= j_lo && j <= j_hi;
    }
    /// Flattened masked index of grid node (i, j); caller guarantees containment.
    int masked_index(int i, int j) const { return (j - j_lo) * (i_hi - i_lo + 1) + (i - i_lo); }
    double weight(int i, int j) const {
        const double wi = (i == i_lo || i == i_hi) ? 0.5 : 1.0;
        const double wj = (j == j_lo || j == j_hi) ? 0.5 : 1.0;
        return wi * wj;
    }
};

/// Scalar forcing on omega, stored compactly per time level (nt+1 levels).
struct ControlField1D {
    ControlRegion1D region;
    std::vector<std::vector<double>> values;   // [level][masked node]

    ControlField1D() = default;
    ControlField1D(const ControlRegion1D& r, int nt)
        : region(r), values(nt + 1, std::vector<double>(r.n_masked(), 0.0)) {}

    int n_levels() const { return static_cast<int>(values.size()); }
    double at_node(int level, int i) const {
        return region.contains(i) ? values[level][i - region.i_lo] : 0.0;
    }
    /// L2(omega) norm squared at one level (trapezoid over the masked sub-interval).
    double norm_sq_level(int level, double dx) const {
        double acc = 0.0;
        for (int k = 0; k < region.n_masked(); ++k)
            acc += region.weight(k) * values[level][k] * values[level][k];
        return acc * dx;
    }
};

/// Vector forcing (2 components) on omega, 2D.
struct ControlField2D {
    ControlRegion2D region;
    std::vector<std::vector<double>> fx;   // [level][masked node]
    std::vector<std::vector<double>> fy;

    ControlField2D() = default;
    ControlField2D(const ControlRegion2D& r, int nt)
        : region(r),
          fx(nt + 1, std::vector<double>(r.n_masked(), 0.0)),
          fy(nt + 1, std::vector<double>(r.n_masked(), 0.0)) {}

    int n_levels() const { return static_cast<int>(fx.size()); }
    double fx_at(int level, int i, int j) const {
        return region.contains(i, j) ? fx[level][region.masked_index(i, j)] : 0.0;
    }
    double fy_at(int level, int i, int j) const {
        return region.contains(i, j) ? fy[level][region.masked_index(i, j)] : 0.0;
    }
    double norm_sq_level(int level, double dx, double dy) const {
        double acc = 0.0;
        for (int j = region.j_lo; j <= region.j_hi; ++j)
            for (int i = region.i_lo; i <= region.i_hi; ++i) {
                const int k = region.masked_index(i, j);
                acc += region.weight(i, j) *
                       (fx[level][k] * fx[level][k] + fy[level][k] * fy[level][k]);
            }
        return acc * dx * dy;
    }
};

} // namespace swave
