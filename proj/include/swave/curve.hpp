#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swave/errors.hpp"
#include "swave/field.hpp"
#include "swave/flux.hpp"
#include "swave/grid.hpp"
#include "swave/interp.hpp"

namespace swave {

/// Curvature of the deformed curve in the 4-mode cosine basis
/// gamma(s) = sum_r a_r cos((2 pi r / f) s) with a fixed frequency f.
struct CurvatureParam {
    std::array<double, 4> amps{0.0, 0.0, 0.0, 0.0};
    double f = 0.0;     // frequency; the verbatim choice is 1/ell
    double ell = 0.0;   // curve length

    double gamma(double s) const {
        double acc = 0.0;
        for (int r = 1; r <= 4; ++r)
            acc += amps[r - 1] * std::cos(2.0 * M_PI * r / f * s);
        return acc;
    }
    /// d gamma / d a_r, r in 1..4.
    double partial(double s, int r) const { return std::cos(2.0 * M_PI * r / f * s); }
};

inline CurvatureParam make_curvature(double ell, const std::array<double, 4>& amps,
                                     double frequency = 0.0) {
    if (!(ell > 0.0)) throw ParameterError("make_curvature: ell must be positive");
    CurvatureParam p;
    p.ell = ell;
    p.amps = amps;
    p.f = (frequency > 0.0) ? frequency : 1.0 / ell;
    return p;
}

/// Tubular neighborhood of the reference segment: |y2| <= eps(y1),
/// eps(s) = c sqrt(s (ell - s)).
struct TubularNeighborhood {
    double ell = 0.0;
    double c = 0.1;
    int n_s = 200;   // intervals along the curve

    double eps(double s) const {
        const double v = s * (ell - s);
        return v > 0.0 ? c * std::sqrt(v) : 0.0;
    }
    double eps_max() const { return c * 0.5 * ell; }
    double ds() const { return ell / static_cast<double>(n_s); }
};

/// Rigid placement of the reference segment in the domain:
/// global = anchor + R * local, with R orthogonal.
struct CurveFrame {
    Vec2 anchor{0.0, 0.0};
    Mat2 R{{{1.0, 0.0}, {0.0, 1.0}}};

    void validate() const {
        const double e00 = R[0][0] * R[0][0] + R[1][0] * R[1][0] - 1.0;
        const double e11 = R[0][1] * R[0][1] + R[1][1] * R[1][1] - 1.0;
        const double e01 = R[0][0] * R[0][1] + R[1][0] * R[1][1];
        if (std::abs(e00) > 1e-14 || std::abs(e11) > 1e-14 || std::abs(e01) > 1e-14)
            throw ParameterError("CurveFrame: R is not orthogonal");
    }

    Vec2 to_global(const Vec2& y) const {
        return {anchor[0] + R[0][0] * y[0] + R[0][1] * y[1],
                anchor[1] + R[1][0] * y[0] + R[1][1] * y[1]};
    }
    Vec2 to_local(const Vec2& x) const {
        const double u = x[0] - anchor[0];
        const double v = x[1] - anchor[1];
        return {R[0][0] * u + R[1][0] * v, R[0][1] * u + R[1][1] * v};
    }
};

inline CurveFrame make_frame(double ax, double ay, double angle = 0.0) {
    CurveFrame fr;
    fr.anchor = {ax, ay};
    const double cs = std::cos(angle), sn = std::sin(angle);
    fr.R = {{{cs, -sn}, {sn, cs}}};
    return fr;
}

/// Deformation of the tube built from the curvature: with
/// alpha(s) = int_0^s gamma, the local map is
///   X(y) = int_0^{y1} (cos alpha, sin alpha) ds + y2 (-sin alpha(y1), cos alpha(y1)),
/// grad X = ((1 - y2 gamma) cos alpha, -sin alpha; (1 - y2 gamma) sin alpha, cos alpha),
/// det grad X = 1 - y2 gamma(y1).
/// alpha, the position integral P and the amplitude partials beta_r = d alpha/d a_r,
/// Q_r = d P/d a_r are tabulated by cumulative trapezoid at n_s+1 nodes and
/// interpolated linearly in s.
class DeformationMap2D {
public:
    DeformationMap2D() = default;

    double ell() const { return ell_; }
    double ds() const { return ds_; }

    double gamma(double s) const { return gamma_(s); }
    double gamma_partial(double s, int r) const { return param_.partial(s, r); }

    double alpha(double s) const { return interp(alpha_, s); }
    Vec2 pos(double s) const { return {interp(px_, s), interp(py_, s)}; }
    double beta(double s, int r) const { return interp(beta_[r - 1], s); }
    Vec2 pos_partial(double s, int r) const {
        return {interp(qx_[r - 1], s), interp(qy_[r - 1], s)};
    }

    Vec2 eval_local(const Vec2& y) const {
        const double al = alpha(y[0]);
        const Vec2 p = pos(y[0]);
        return {p[0] - y[1] * std::sin(al), p[1] + y[1] * std::cos(al)};
    }

    Mat2 grad_local(const Vec2& y) const {
        const double al = alpha(y[0]);
        const double m = 1.0 - y[1] * gamma_(y[0]);
        return {{{m * std::cos(al), -std::sin(al)}, {m * std::sin(al), std::cos(al)}}};
    }

    double det_local(const Vec2& y) const { return 1.0 - y[1] * gamma_(y[0]); }

    /// d X / d a_r at fixed y.
    Vec2 eval_partial(const Vec2& y, int r) const {
        const double al = alpha(y[0]);
        const double be = beta(y[0], r);
        const Vec2 q = pos_partial(y[0], r);
        return {q[0] - y[1] * std::cos(al) * be, q[1] - y[1] * std::sin(al) * be};
    }

    /// d (grad X) / d a_r at fixed y.
    Mat2 grad_partial(const Vec2& y, int r) const {
        const double al = alpha(y[0]);
        const double be = beta(y[0], r);
        const double cr = param_.partial(y[0], r);
        const double m = 1.0 - y[1] * gamma_(y[0]);
        const double ca = std::cos(al), sa = std::sin(al);
        return {{{-y[1] * cr * ca - m * sa * be, -ca * be},
                 {-y[1] * cr * sa + m * ca * be, -sa * be}}};
    }

    /// d (det grad X) / d a_r = -y2 * dgamma/da_r(y1).
    double det_partial(const Vec2& y, int r) const { return -y[1] * param_.partial(y[0], r); }

    const CurvatureParam& param() const { return param_; }

    friend DeformationMap2D build_map_2d(const CurvatureParam&, const TubularNeighborhood&);
    friend DeformationMap2D build_map_2d_custom(const std::function<double(double)>&, double,
                                                int);

private:
    double interp(const std::vector<double>& tab, double s) const {
        const double tol = 1e-12 * ell_;
        if (s < -tol || s > ell_ + tol)
            throw GeometryError("DeformationMap2D: s = " + std::to_string(s) +
                                " outside [0, ell]");
        double r = std::clamp(s / ds_, 0.0, static_cast<double>(n_s_));
        int k = std::min(static_cast<int>(r), n_s_ - 1);
        double t = r - static_cast<double>(k);
        return (1.0 - t) * tab[k] + t * tab[k + 1];
    }

    void tabulate() {
        const int n = n_s_;
        alpha_.assign(n + 1, 0.0);
        px_.assign(n + 1, 0.0);
        py_.assign(n + 1, 0.0);
        std::vector<double> g(n + 1);
        for (int k = 0; k <= n; ++k) g[k] = gamma_(static_cast<double>(k) * ds_);
        for (int k = 1; k <= n; ++k)
            alpha_[k] = alpha_[k - 1] + 0.5 * ds_ * (g[k - 1] + g[k]);
        for (int k = 1; k <= n; ++k) {
            px_[k] = px_[k - 1] + 0.5 * ds_ * (std::cos(alpha_[k - 1]) + std::cos(alpha_[k]));
            py_[k] = py_[k - 1] + 0.5 * ds_ * (std::sin(alpha_[k - 1]) + std::sin(alpha_[k]));
        }
        if (!has_partials_) return;
        for (int r = 1; r <= 4; ++r) {
            auto& be = beta_[r - 1];
            auto& qx = qx_[r - 1];
            auto& qy = qy_[r - 1];
            be.assign(n + 1, 0.0);
            qx.assign(n + 1, 0.0);
            qy.assign(n + 1, 0.0);
            std::vector<double> cr(n + 1);
            for (int k = 0; k <= n; ++k)
                cr[k] = param_.partial(static_cast<double>(k) * ds_, r);
            for (int k = 1; k <= n; ++k)
                be[k] = be[k - 1] + 0.5 * ds_ * (cr[k - 1] + cr[k]);
            for (int k = 1; k <= n; ++k) {
                const double fa = -std::sin(alpha_[k - 1]) * be[k - 1];
                const double fb = -std::sin(alpha_[k]) * be[k];
                const double ga = std::cos(alpha_[k - 1]) * be[k - 1];
                const double gb = std::cos(alpha_[k]) * be[k];
                qx[k] = qx[k - 1] + 0.5 * ds_ * (fa + fb);
                qy[k] = qy[k - 1] + 0.5 * ds_ * (ga + gb);
            }
        }
    }

    CurvatureParam param_;
    std::function<double(double)> gamma_;
    double ell_ = 0.0;
    double ds_ = 0.0;
    int n_s_ = 0;
    bool has_partials_ = false;
    std::vector<double> alpha_, px_, py_;
    std::array<std::vector<double>, 4> beta_, qx_, qy_;
};

/// Builds the deformation and verifies the invertibility condition
/// sup_s |eps(s) gamma(s)| < 1 on the s-nodes.
inline DeformationMap2D build_map_2d(const CurvatureParam& param,
                                     const TubularNeighborhood& tube) {
    if (std::abs(param.ell - tube.ell) > 1e-12 * param.ell)
        throw ParameterError("build_map_2d: curvature and tube disagree on ell");
    DeformationMap2D m;
    m.param_ = param;
    m.gamma_ = [p = param](double s) { return p.gamma(s); };
    m.ell_ = param.ell;
    m.n_s_ = tube.n_s;
    m.ds_ = tube.ds();
    m.has_partials_ = true;
    double sup = 0.0;
    for (int k = 0; k <= tube.n_s; ++k) {
        const double s = static_cast<double>(k) * m.ds_;
        sup = std::max(sup, std::abs(tube.eps(s) * param.gamma(s)));
    }
    if (sup >= 1.0)
        throw GeometryError("build_map_2d: invertibility violated, sup|eps*gamma| = " +
                            std::to_string(sup));
    m.tabulate();
    return m;
}

/// Test hook: builds a map from an arbitrary curvature function; amplitude
/// partials are unavailable.
inline DeformationMap2D build_map_2d_custom(const std::function<double(double)>& gamma,
                                            double ell, int n_s) {
    DeformationMap2D m;
    m.gamma_ = gamma;
    m.ell_ = ell;
    m.n_s_ = n_s;
    m.ds_ = ell / static_cast<double>(n_s);
    m.has_partials_ = false;
    m.tabulate();
    return m;
}

/// Composed map y -> h + R X(R^T (y - h)) of a global point near the planted tube.
inline Vec2 frame_apply(const CurveFrame& frame, const DeformationMap2D& map, const Vec2& y) {
    return frame.to_global(map.eval_local(frame.to_local(y)));
}

/// Gradient of the composed map: R (grad X) R^T; the determinant is unchanged.
inline Mat2 frame_gradient(const CurveFrame& frame, const DeformationMap2D& map, const Vec2& y) {
    const Mat2 G = map.grad_local(frame.to_local(y));
    Mat2 GR{};   // G * R^T
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            GR[i][j] = G[i][0] * frame.R[j][0] + G[i][1] * frame.R[j][1];
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = frame.R[i][0] * GR[0][j] + frame.R[i][1] * GR[1][j];
    return out;
}

/// Deformed position of a local tube point.
inline Vec2 deformed_point(const CurveFrame& frame, const DeformationMap2D& map,
                           const Vec2& y_local) {
    return frame.to_global(map.eval_local(y_local));
}

/// Trapezoid quadrature over the reference tube S0 = {(s, t): |t| <= eps(s)}:
/// outer trapezoid over the s-nodes, inner trapezoid with n_t transverse samples.
/// The functor receives local coordinates (s, t).
template <class F>
double immersed_quadrature(F&& phi, const TubularNeighborhood& tube, int n_t = 8) {
    if (n_t < 2) throw ParameterError("immersed_quadrature: n_t must be >= 2");
    const double ds = tube.ds();
    double acc = 0.0;
    for (int k = 0; k <= tube.n_s; ++k) {
        const double s = static_cast<double>(k) * ds;
        const double e = tube.eps(s);
        double inner = 0.0;
        if (e > 0.0) {
            const double h = 2.0 * e / static_cast<double>(n_t - 1);
            for (int j = 0; j < n_t; ++j) {
                const double t = -e + h * static_cast<double>(j);
                const double w = (j == 0 || j == n_t - 1) ? 0.5 : 1.0;
                inner += w * phi(s, t);
            }
            inner *= h;
        }
        const double ws = (k == 0 || k == tube.n_s) ? 0.5 : 1.0;
        acc += ws * inner;
    }
    return acc * ds;
}

/// Integral over the reference tube of a grid field (the tube planted by the
/// frame, undeformed); field values by bilinear interpolation.
inline double immersed_quadrature(const Grid2D& grid, const std::vector<double>& field,
                                  const TubularNeighborhood& tube, const CurveFrame& frame,
                                  int n_t = 8) {
    try {
        return immersed_quadrature(
            [&](double s, double t) {
                const Vec2 x = frame.to_global({s, t});
                return bilinear_interpolate(grid, field, x[0], x[1]);
            },
            tube, n_t);
    } catch (const OutOfRangeError& e) {
        throw GeometryError(std::string("immersed_quadrature: sample point left the domain: ") +
                            e.what());
    }
}

/// Nearest-grid-point approximate inverse of the deformation: for a query x it
/// returns the local coordinates of the grid node y minimizing |x - X(y)| among
/// candidates near the tube, or nothing when the minimum exceeds one grid
/// diagonal.
class InverseLocator {
public:
    InverseLocator(const Grid2D& grid, const DeformationMap2D& map, const CurveFrame& frame,
                   const TubularNeighborhood& tube) {
        diag_ = std::hypot(grid.dx, grid.dy);
        const double band = tube.eps_max() + 2.0 * diag_;
        lo_ = {1e300, 1e300};
        hi_ = {-1e300, -1e300};
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const Vec2 y{grid.x(i), grid.y(j)};
                const Vec2 loc = frame.to_local(y);
                if (loc[0] < 0.0 || loc[0] > map.ell() || std::abs(loc[1]) > band) continue;
                const Vec2 img = frame.to_global(map.eval_local(loc));
                locals_.push_back(loc);
                images_.push_back(img);
                lo_[0] = std::min(lo_[0], img[0]);
                lo_[1] = std::min(lo_[1], img[1]);
                hi_[0] = std::max(hi_[0], img[0]);
                hi_[1] = std::max(hi_[1], img[1]);
            }
    }

    std::optional<Vec2> locate(const Vec2& x) const {
        if (locals_.empty()) return std::nullopt;
        if (x[0] < lo_[0] - diag_ || x[0] > hi_[0] + diag_ || x[1] < lo_[1] - diag_ ||
            x[1] > hi_[1] + diag_)
            return std::nullopt;
        double best = 1e300;
        size_t arg = 0;
        for (size_t k = 0; k < images_.size(); ++k) {
            const double d = std::hypot(x[0] - images_[k][0], x[1] - images_[k][1]);
            if (d < best) {
                best = d;
                arg = k;
            }
        }
        if (best > diag_) return std::nullopt;
        return locals_[arg];
    }

    double grid_diagonal() const { return diag_; }

private:
    std::vector<Vec2> locals_;
    std::vector<Vec2> images_;
    Vec2 lo_{}, hi_{};
    double diag_ = 0.0;
};

inline std::optional<Vec2> locate_inverse_on_grid(const Grid2D& grid, const DeformationMap2D& map,
                                                  const CurveFrame& frame,
                                                  const TubularNeighborhood& tube,
                                                  const Vec2& x) {
    return InverseLocator(grid, map, frame, tube).locate(x);
}

/// Deformed curve export, one row per s-node: s,x1,x2.
inline void export_curve_csv(const std::string& path, const DeformationMap2D& map,
                             const CurveFrame& frame, int n_points = 200) {
    detail::CsvFile csv(path);
    csv.header("s,x1,x2");
    for (int k = 0; k <= n_points; ++k) {
        const double s = map.ell() * static_cast<double>(k) / static_cast<double>(n_points);
        const Vec2 x = frame.to_global(map.eval_local({s, 0.0}));
        csv.row({s, x[0], x[1]});
    }
}

} // namespace swave
