#include "helmstab/march.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helmstab/kernels.hpp"

namespace helmstab {

void StabilizationParams::validate() const {
    if (!(eta > 0 && eta <= k))
        throw std::invalid_argument("stabilization: need 0 < eta <= k");
    const double lg = log_gamma();
    const double dx = grid.dx();
    if (!(lg * dx * std::exp(lg * dx) < 1.0))
        throw std::invalid_argument("stabilization: step constraint lg*dx*e^(lg*dx) < 1 violated");
    if (grid.dx() > grid.dy())
        throw std::invalid_argument("stabilization: requires dx <= dy");
    const int jm = modes();
    const double mu_max = (jm * std::numbers::pi) * (jm * std::numbers::pi);
    if (dx * dx * mu_max > 4.0)
        throw std::invalid_argument("stabilization: explicit march unstable, need dx^2*mu_max <= 4");
    if (q < 1) throw std::invalid_argument("stabilization: q >= 1");
}

namespace {

void check_datum(const Slice& value, GridSpec grid) {
    if (int(value.size()) != grid.N + 1)
        throw std::invalid_argument("march: datum slice size");
    if (std::abs(value.front()) > 1e-10 || std::abs(value.back()) > 1e-10)
        throw std::invalid_argument("march: datum endpoints must vanish");
}

struct ModeTables {
    std::vector<double> s, b;
};

ModeTables mode_tables(const FrequencyPartition& part) {
    ModeTables t;
    t.s.resize(part.jmax);
    t.b.resize(part.jmax);
    for (int j = 1; j <= part.jmax; ++j) {
        double lam = part.lambda[j - 1];
        // The wave operator flips the sign for B and band modes (B stays
        // flipped: cos instead of cosh); the band is driven back to its true
        // cosh dynamics by the source term at the sweep fixed point.
        // Oscillatory modes (lambda < 0) keep their true dynamics outright.
        t.s[j - 1] = part.in_A3(j) ? lam : -lam;
        t.b[j - 1] = part.in_band(j) ? 2.0 * lam : 0.0;
    }
    return t;
}

std::vector<double> march_rows(const std::vector<double>& src, const std::vector<double>& c0,
                               const ModeTables& t, GridSpec grid, int jmax) {
    const int M = grid.M;
    const double dx2 = grid.dx() * grid.dx();
    std::vector<double> C(size_t(M + 1) * jmax);
    double* r0 = C.data();
    for (int j = 0; j < jmax; ++j) r0[j] = c0[j];
    kernels::taylor_row(r0, t.s.data(), t.b.data(), src.data(), 0.5 * dx2, C.data() + jmax, jmax);
    for (int m = 1; m < M; ++m) {
        kernels::leapfrog_row(C.data() + size_t(m) * jmax, C.data() + size_t(m - 1) * jmax,
                              t.s.data(), t.b.data(), src.data() + size_t(m) * jmax, dx2,
                              C.data() + size_t(m + 1) * jmax, jmax);
    }
    return C;
}

std::vector<double> sweep_coeffs(const std::vector<double>& c0, const StabilizationParams& params,
                                 const FrequencyPartition& part) {
    const int jmax = part.jmax;
    const int M = params.grid.M;
    ModeTables t = mode_tables(part);
    // initial guess: constant-in-x extension of the datum
    std::vector<double> prev(size_t(M + 1) * jmax);
    for (int m = 0; m <= M; ++m)
        for (int j = 0; j < jmax; ++j) prev[size_t(m) * jmax + j] = c0[j];
    for (int sweep = 0; sweep < params.q; ++sweep)
        prev = march_rows(prev, c0, t, params.grid, jmax);
    return prev;
}

GridFunction2D synthesize(const std::vector<double>& C, const CauchySlice& data,
                          const StabilizationParams& params, const SineBasis& basis) {
    const int M = params.grid.M;
    const int jmax = basis.modes();
    GridFunction2D V(params.grid);
    for (int n = 0; n <= params.grid.N; ++n) V.at(0, n) = data.value[n];
    for (int m = 1; m <= M; ++m)
        basis.inverse_interior(C.data() + size_t(m) * jmax, V.row(m) + 1);
    return V;
}

} // namespace

std::vector<double> march_once_coeffs(const std::vector<double>& src,
                                      const std::vector<double>& c0,
                                      const FrequencyPartition& part, GridSpec grid) {
    ModeTables t = mode_tables(part);
    return march_rows(src, c0, t, grid, part.jmax);
}

GridFunction2D march_once(const GridFunction2D& source_prev, const CauchySlice& data,
                          const StabilizationParams& params) {
    params.validate();
    check_datum(data.value, params.grid);
    if (!(source_prev.grid == params.grid))
        throw std::invalid_argument("march_once: source grid mismatch");
    const int jmax = params.modes();
    SineBasis basis(params.grid.N, jmax);
    FrequencyPartition part = make_partition(params.k, params.eta, jmax);
    std::vector<double> src(size_t(params.grid.M + 1) * jmax, 0.0);
    const double dy = params.grid.dy();
    for (int m = 0; m <= params.grid.M; ++m) {
        double* c = src.data() + size_t(m) * jmax;
        basis.forward_interior_unscaled(source_prev.row(m) + 1, c);
        for (int j = 0; j < jmax; ++j) c[j] *= dy;
    }
    std::vector<double> c0 = basis.forward(data.value);
    std::vector<double> C = march_once_coeffs(src, c0, part, params.grid);
    return synthesize(C, data, params, basis);
}

std::vector<double> solve_V_coeffs(const CauchySlice& data, const StabilizationParams& params) {
    params.validate();
    check_datum(data.value, params.grid);
    const int jmax = params.modes();
    SineBasis basis(params.grid.N, jmax);
    FrequencyPartition part = make_partition(params.k, params.eta, jmax);
    return sweep_coeffs(basis.forward(data.value), params, part);
}

GridFunction2D solve_V(const CauchySlice& data, const StabilizationParams& params) {
    params.validate();
    check_datum(data.value, params.grid);
    const int jmax = params.modes();
    SineBasis basis(params.grid.N, jmax);
    FrequencyPartition part = make_partition(params.k, params.eta, jmax);
    std::vector<double> C = sweep_coeffs(basis.forward(data.value), params, part);
    return synthesize(C, data, params, basis);
}

GridFunction2D solve_u_eps_direct(const CauchySlice& data, const StabilizationParams& params) {
    return solve_V(data, params);
}

} // namespace helmstab
