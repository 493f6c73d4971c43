#pragma once

#include <cmath>
#include <string>

#include "swave/errors.hpp"

namespace swave {

/// Position of the wave peak at final time; must lie strictly inside (0, L).
struct GeoParam1D {
    double eta = 0.0;
};

/// Explicit change of variables X: (0,L) -> (0,L) with X(0) = 0, X(L) = L,
/// X(L/2) = eta:
///   X(y) = a y^2 + b y            for y <= L/2,
///   X(y) = (L - y)(c y + d) + L   for y >= L/2,
/// with a = 4 eta (L - 2 eta)/L^3, b = 4 eta^2/L^2,
///      c = 4 (L - eta)(2 eta - L)/L^3, d = 4 eta (eta - L)/L^2.
/// X' is continuous at L/2 and positive on (0, L), so X is a diffeomorphism.
/// The eta-derivatives of the coefficients are kept analytically; they feed the
/// geometric gradient through div w.
struct PiecewiseQuadraticMap {
    double eta = 0.0;
    double L = 0.0;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double da = 0.0, db = 0.0, dc = 0.0, dd = 0.0;   // d/d(eta) of a, b, c, d
};

inline PiecewiseQuadraticMap build_map_1d(double eta, double L) {
    if (!(eta > 0.0) || !(eta < L))
        throw ParameterError("build_map_1d: eta = " + std::to_string(eta) +
                             " must lie strictly inside (0, " + std::to_string(L) + ")");
    PiecewiseQuadraticMap m;
    m.eta = eta;
    m.L = L;
    const double L2 = L * L, L3 = L2 * L;
    m.a = 4.0 * eta * (L - 2.0 * eta) / L3;
    m.b = 4.0 * eta * eta / L2;
    m.c = 4.0 * (L - eta) * (2.0 * eta - L) / L3;
    m.d = 4.0 * eta * (eta - L) / L2;
    m.da = 4.0 * (L - 4.0 * eta) / L3;
    m.db = 8.0 * eta / L2;
    m.dc = 4.0 * (3.0 * L - 4.0 * eta) / L3;
    m.dd = 4.0 * (2.0 * eta - L) / L2;
    return m;
}

inline double map_eval(const PiecewiseQuadraticMap& m, double y) {
    if (y <= 0.5 * m.L) return m.a * y * y + m.b * y;
    return (m.L - y) * (m.c * y + m.d) + m.L;
}

/// X'(y); both branches give 4 eta (L - eta)/L^2 at y = L/2.
inline double map_derivative(const PiecewiseQuadraticMap& m, double y) {
    if (y <= 0.5 * m.L) return 2.0 * m.a * y + m.b;
    return -(m.c * y + m.d) + m.c * (m.L - y);
}

/// d/d(eta) of X'(y) at fixed y.
inline double map_derivative_eta(const PiecewiseQuadraticMap& m, double y) {
    if (y <= 0.5 * m.L) return 2.0 * m.da * y + m.db;
    return -2.0 * m.dc * y + m.dc * m.L - m.dd;
}

/// Closed-form inverse Y(x). The branch is picked by comparing x with eta
/// (branch images are [0, eta] and [eta, L]); each branch solves its quadratic
/// in the subtraction-free form.
inline double map_inverse(const PiecewiseQuadraticMap& m, double x) {
    if (x <= m.eta) {
        const double disc = m.b * m.b + 4.0 * m.a * x;
        if (disc < 0.0)
            throw InternalConsistencyError("map_inverse: negative discriminant on left branch");
        return 2.0 * x / (m.b + std::sqrt(disc));
    }
    // Right branch via z = L - y:  c z^2 + b2 z = L - x, b2 = -(cL + d) = 4(L-eta)^2/L^2.
    const double b2 = -(m.c * m.L + m.d);
    const double disc = b2 * b2 + 4.0 * m.c * (m.L - x);
    if (disc < 0.0)
        throw InternalConsistencyError("map_inverse: negative discriminant on right branch");
    const double z = 2.0 * (m.L - x) / (b2 + std::sqrt(disc));
    return m.L - z;
}

/// Divergence of the Eulerian velocity w(x) = dX/d(eta)(Y(x)):
/// (div w)(x) = (dX'/d(eta))(Y(x)) / X'(Y(x)), the 1D form of
/// (div w) o X = d/d(eta) log det grad X.
inline double div_w_1d(const PiecewiseQuadraticMap& m, double x) {
    const double y = map_inverse(m, x);
    return map_derivative_eta(m, y) / map_derivative(m, y);
}

} // namespace swave
