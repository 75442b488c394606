#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace helmstab {

using Slice = std::vector<double>;

// Uniform grid on [0,1] x [0,1]: M intervals in x, N in y.
struct GridSpec {
    int M = 400;
    int N = 80;

    double dx() const { return 1.0 / M; }
    double dy() const { return 1.0 / N; }
    double x(int m) const { return static_cast<double>(m) / M; }
    double y(int n) const { return static_cast<double>(n) / N; }
    int rows() const { return M + 1; }
    int cols() const { return N + 1; }

    bool operator==(const GridSpec&) const = default;
};

// Real values at the (M+1) x (N+1) nodes, stored m-major so a constant-x
// slice is contiguous.
struct GridFunction2D {
    GridSpec grid;
    std::vector<double> v;

    GridFunction2D() = default;
    explicit GridFunction2D(GridSpec g) : grid(g), v(size_t(g.rows()) * g.cols(), 0.0) {}

    double& at(int m, int n) { return v[size_t(m) * grid.cols() + n]; }
    double at(int m, int n) const { return v[size_t(m) * grid.cols() + n]; }
    double* row(int m) { return v.data() + size_t(m) * grid.cols(); }
    const double* row(int m) const { return v.data() + size_t(m) * grid.cols(); }
};

inline Slice extract_trace(const GridFunction2D& u, int m) {
    if (m < 0 || m > u.grid.M) throw std::out_of_range("extract_trace: column index");
    return Slice(u.row(m), u.row(m) + u.grid.cols());
}

inline GridFunction2D compose_solution(const GridFunction2D& U, const GridFunction2D& V) {
    if (!(U.grid == V.grid)) throw std::invalid_argument("compose_solution: grid mismatch");
    GridFunction2D out(U.grid);
    for (size_t i = 0; i < out.v.size(); ++i) out.v[i] = U.v[i] + V.v[i];
    return out;
}

} // namespace helmstab
