#pragma once

#include <string>

#include "swave/errors.hpp"

namespace swave {

/// Uniform node-centered grid on (0, L): nodes x_i = i*dx, x_0 = 0, x_{n-1} = L.
struct Grid1D {
    double length = 0.0;
    int n_nodes = 0;
    double dx = 0.0;

    Grid1D() = default;
    Grid1D(double length_L, int n) : length(length_L), n_nodes(n) {
        if (n_nodes < 3)
            throw ParameterError("Grid1D: n_nodes must be >= 3, got " + std::to_string(n));
        if (!(length > 0.0))
            throw ParameterError("Grid1D: length must be positive");
        dx = length / static_cast<double>(n_nodes - 1);
    }

    double x(int i) const { return static_cast<double>(i) * dx; }
};

/// Uniform node-centered grid on (0, Lx) x (0, Ly). Fields are stored row-major,
/// index(i, j) = j*nx + i with i along x.
struct Grid2D {
    double length_x = 0.0;
    double length_y = 0.0;
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;

    Grid2D() = default;
    Grid2D(double Lx, double Ly, int nx_, int ny_)
        : length_x(Lx), length_y(Ly), nx(nx_), ny(ny_) {
        if (nx < 3 || ny < 3)
            throw ParameterError("Grid2D: nx and ny must be >= 3");
        if (!(Lx > 0.0) || !(Ly > 0.0))
            throw ParameterError("Grid2D: side lengths must be positive");
        dx = Lx / static_cast<double>(nx - 1);
        dy = Ly / static_cast<double>(ny - 1);
    }

    double x(int i) const { return static_cast<double>(i) * dx; }
    double y(int j) const { return static_cast<double>(j) * dy; }
    int size() const { return nx * ny; }
    int index(int i, int j) const { return j * nx + i; }
};

/// Physical constants of the shallow-water model.
struct PhysicsParams {
    double g = 9.81;      // gravity [m/s^2]
    double H0 = 1.5;      // reference flat height [m]
    double kappa = 0.0;   // viscosity [m^2/s]; solvers require 0

    void validate() const {
        if (!(g > 0.0)) throw ParameterError("PhysicsParams: g must be positive");
        if (!(H0 > 0.0)) throw ParameterError("PhysicsParams: H0 must be positive");
        if (kappa < 0.0) throw ParameterError("PhysicsParams: kappa must be >= 0");
    }
};

} // namespace swave
