#include "helmstab/fdm.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace helmstab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Shared assembly for both solvers. Unknown layout is m-major over the rows
// m = m_lo..M-1 and interior columns n = 1..N-1; m_lo is 1 for the Dirichlet
// problem and 0 for the Neumann (ghost) problem.
struct Assembly {
    SpMat A;
    Vec rhs;
    int m_lo, cols;
    int idx(int m, int n) const { return (m - m_lo) * cols + (n - 1); }
};

// After factorizing, estimate ||A^-1|| by inverse power iteration and fail
// loudly if k^2 is effectively resonant on this grid.
void check_conditioning(const SpMat& A, const Eigen::SparseLU<SpMat>& lu, double k) {
    const int n = int(A.rows());
    double a_norm = 0.0;
    for (int c = 0; c < A.outerSize(); ++c) {
        // infinity norm via column sums of the transpose; A is structurally
        // symmetric here so column sums serve
        double s = 0.0;
        for (SpMat::InnerIterator it(A, c); it; ++it) s += std::abs(it.value());
        a_norm = std::max(a_norm, s);
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = dist(rng);
    x /= x.norm();
    double growth = 0.0;
    for (int it = 0; it < 4; ++it) {
        Vec y = lu.solve(x);
        growth = y.norm();
        x = y / growth;
    }
    double cond = a_norm * growth;
    if (cond > 1e12) {
        // Rayleigh quotient of the converged vector gives the smallest
        // magnitude eigenvalue alpha of A = D_h + k^2 I; the offending
        // discrete Laplacian eigenvalue is then k^2 - alpha.
        double alpha = x.dot(A * x) / x.dot(x);
        throw NearSingularError(
            "helmholtz system is near-singular: k^2 close to a discrete eigenvalue",
            k * k - alpha, cond);
    }
}

GridFunction2D solve_assembled(Assembly& as, GridSpec grid, double k,
                               const Slice* u0, const Slice* g) {
    as.A.makeCompressed();
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(as.A);
    lu.factorize(as.A);
    if (lu.info() != Eigen::Success)
        throw NearSingularError("helmholtz system factorization failed", k * k,
                                std::numeric_limits<double>::infinity());
    check_conditioning(as.A, lu, k);
    Vec sol = lu.solve(as.rhs);

    GridFunction2D u(grid);
    for (int m = as.m_lo; m < grid.M; ++m)
        for (int n = 1; n < grid.N; ++n) u.at(m, n) = sol[as.idx(m, n)];
    if (u0)
        for (int n = 0; n <= grid.N; ++n) u.at(0, n) = (*u0)[n];
    if (g)
        for (int n = 0; n <= grid.N; ++n) u.at(grid.M, n) = (*g)[n];
    // side walls stay zero
    for (int m = 0; m <= grid.M; ++m) u.at(m, 0) = u.at(m, grid.N) = 0.0;
    return u;
}

} // namespace

GridFunction2D solve_dirichlet(const Slice& u0, const Slice& g, double k, GridSpec grid) {
    const int M = grid.M, N = grid.N;
    if (int(u0.size()) != N + 1 || int(g.size()) != N + 1)
        throw std::invalid_argument("solve_dirichlet: boundary slice size");
    const double ax = 1.0 / (grid.dx() * grid.dx());
    const double ay = 1.0 / (grid.dy() * grid.dy());
    const double diag = -2.0 * ax - 2.0 * ay + k * k;

    Assembly as;
    as.m_lo = 1;
    as.cols = N - 1;
    const int unknowns = (M - 1) * (N - 1);
    as.rhs = Vec::Zero(unknowns);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(size_t(unknowns) * 5);
    for (int m = 1; m < M; ++m) {
        for (int n = 1; n < N; ++n) {
            int row = as.idx(m, n);
            trip.emplace_back(row, row, diag);
            if (m > 1) trip.emplace_back(row, as.idx(m - 1, n), ax);
            else as.rhs[row] -= ax * u0[n];
            if (m < M - 1) trip.emplace_back(row, as.idx(m + 1, n), ax);
            else as.rhs[row] -= ax * g[n];
            if (n > 1) trip.emplace_back(row, as.idx(m, n - 1), ay);
            if (n < N - 1) trip.emplace_back(row, as.idx(m, n + 1), ay);
        }
    }
    as.A = SpMat(unknowns, unknowns);
    as.A.setFromTriplets(trip.begin(), trip.end());
    return solve_assembled(as, grid, k, &u0, &g);
}

Slice generate_neumann_data(const GridFunction2D& u_true, const Slice& u0) {
    const GridSpec grid = u_true.grid;
    if (int(u0.size()) != grid.N + 1)
        throw std::invalid_argument("generate_neumann_data: slice size");
    Slice u1(grid.N + 1, 0.0);
    const double dx = grid.dx();
    for (int n = 0; n <= grid.N; ++n) u1[n] = (u0[n] - u_true.at(1, n)) / dx;
    return u1;
}

GridFunction2D solve_U(const Slice& u1, double k, GridSpec grid) {
    const int M = grid.M, N = grid.N;
    if (int(u1.size()) != N + 1) throw std::invalid_argument("solve_U: slice size");
    const double dx = grid.dx();
    const double ax = 1.0 / (dx * dx);
    const double ay = 1.0 / (grid.dy() * grid.dy());
    const double diag = -2.0 * ax - 2.0 * ay + k * k;

    Assembly as;
    as.m_lo = 0;
    as.cols = N - 1;
    const int unknowns = M * (N - 1);
    as.rhs = Vec::Zero(unknowns);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(size_t(unknowns) * 5);
    for (int m = 0; m < M; ++m) {
        for (int n = 1; n < N; ++n) {
            int row = as.idx(m, n);
            trip.emplace_back(row, row, diag);
            if (m == 0) {
                // ghost elimination: U_{-1} = U_1 + 2 dx u1, so the west and
                // east neighbours merge into 2 U_1 and a data term
                trip.emplace_back(row, as.idx(1, n), 2.0 * ax);
                as.rhs[row] -= 2.0 * u1[n] / dx;
            } else {
                trip.emplace_back(row, as.idx(m - 1, n), ax);
                if (m < M - 1) trip.emplace_back(row, as.idx(m + 1, n), ax);
                // east neighbour at m = M-1 is the zero Dirichlet wall
            }
            if (n > 1) trip.emplace_back(row, as.idx(m, n - 1), ay);
            if (n < N - 1) trip.emplace_back(row, as.idx(m, n + 1), ay);
        }
    }
    as.A = SpMat(unknowns, unknowns);
    as.A.setFromTriplets(trip.begin(), trip.end());
    return solve_assembled(as, grid, k, nullptr, nullptr);
}

double interior_residual_inf(const GridFunction2D& u, double k) {
    const GridSpec grid = u.grid;
    const double ax = 1.0 / (grid.dx() * grid.dx());
    const double ay = 1.0 / (grid.dy() * grid.dy());
    double worst = 0.0;
    for (int m = 1; m < grid.M; ++m) {
        for (int n = 1; n < grid.N; ++n) {
            double r = ax * (u.at(m + 1, n) - 2.0 * u.at(m, n) + u.at(m - 1, n)) +
                       ay * (u.at(m, n + 1) - 2.0 * u.at(m, n) + u.at(m, n - 1)) +
                       k * k * u.at(m, n);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

} // namespace helmstab
