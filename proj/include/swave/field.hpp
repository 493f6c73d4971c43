#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "swave/errors.hpp"
#include "swave/grid.hpp"

namespace swave {

/// Conserved state (H, Hv) at one time level, 1D.
struct State1D {
    std::vector<double> h;
    std::vector<double> hu;

    State1D() = default;
    explicit State1D(int n) : h(n, 0.0), hu(n, 0.0) {}
    int size() const { return static_cast<int>(h.size()); }
};

/// Conserved state (H, Hv1, Hv2) at one time level, 2D, row-major.
struct State2D {
    std::vector<double> h;
    std::vector<double> hu;
    std::vector<double> hv;

    State2D() = default;
    explicit State2D(int n) : h(n, 0.0), hu(n, 0.0), hv(n, 0.0) {}
    int size() const { return static_cast<int>(h.size()); }
};

/// Full space-time storage of the forward state, nt+1 levels.
struct Trajectory1D {
    double dt = 0.0;
    std::vector<State1D> states;

    int n_steps() const { return static_cast<int>(states.size()) - 1; }
    const State1D& at(int level) const { return states[level]; }
};

struct Trajectory2D {
    double dt = 0.0;
    std::vector<State2D> states;

    int n_steps() const { return static_cast<int>(states.size()) - 1; }
    const State2D& at(int level) const { return states[level]; }
};

/// Adjoint state at one level; same layout as the forward state.
using Adjoint1D = State1D;
using Adjoint2D = State2D;

struct AdjointTrajectory1D {
    double dt = 0.0;
    std::vector<Adjoint1D> levels;
    const Adjoint1D& at(int level) const { return levels[level]; }
};

struct AdjointTrajectory2D {
    double dt = 0.0;
    std::vector<Adjoint2D> levels;
    const Adjoint2D& at(int level) const { return levels[level]; }
};

namespace detail {

class CsvFile {
public:
    explicit CsvFile(const std::string& path) : f_(std::fopen(path.c_str(), "w")) {
        if (!f_) throw Error("cannot open '" + path + "' for writing");
    }
    ~CsvFile() {
        if (f_) std::fclose(f_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void header(const std::string& line) { std::fprintf(f_, "%s\n", line.c_str()); }
    void row(const std::vector<double>& values) {
        for (size_t k = 0; k < values.size(); ++k)
            std::fprintf(f_, k + 1 < values.size() ? "%.17g," : "%.17g\n", values[k]);
    }
    std::FILE* raw() { return f_; }

private:
    std::FILE* f_;
};

} // namespace detail

/// Snapshot export, one row per node: x,H,v1.
inline void export_state_csv(const std::string& path, const Grid1D& grid, const State1D& s) {
    detail::CsvFile csv(path);
    csv.header("x,H,v1");
    for (int i = 0; i < grid.n_nodes; ++i)
        csv.row({grid.x(i), s.h[i], s.hu[i] / s.h[i]});
}

/// Snapshot export, one row per node (j outer, i inner): x,y,H,v1,v2.
inline void export_state_csv(const std::string& path, const Grid2D& grid, const State2D& s) {
    detail::CsvFile csv(path);
    csv.header("x,y,H,v1,v2");
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const int k = grid.index(i, j);
            csv.row({grid.x(i), grid.y(j), s.h[k], s.hu[k] / s.h[k], s.hv[k] / s.h[k]});
        }
}

} // namespace swave
