#include "helmstab/noise.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace helmstab {

std::vector<double> rand_unit(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        double u = double(rng() >> 11) * 0x1.0p-53; // [0,1)
        out[i] = 2.0 * u - 1.0;
    }
    return out;
}

Slice add_noise(const Slice& u0, const NoiseModel& model) {
    const int N = int(u0.size()) - 1;
    if (N < 2) throw std::invalid_argument("add_noise: slice too short");
    Slice out = u0;
    if (model.eps != 0.0) {
        std::vector<double> r = rand_unit(model.seed, N - 1);
        for (int n = 1; n < N; ++n) out[n] = u0[n] + model.eps * r[n - 1];
    }
    out[0] = 0.0;
    out[N] = 0.0;
    return out;
}

double l2_norm(const Slice& delta, double dy) {
    double s = 0.0;
    for (double v : delta) s += v * v;
    return std::sqrt(dy * s);
}

double h1_norm(const Slice& delta, double dy) {
    double s = 0.0;
    for (double v : delta) s += v * v;
    double g = 0.0;
    for (size_t n = 0; n + 1 < delta.size(); ++n) {
        double d = (delta[n + 1] - delta[n]) / dy;
        g += d * d;
    }
    return std::sqrt(dy * (s + g));
}

CoarseMeshReport check_coarse_mesh(double eps, double k, int N, double beta) {
    if (!(beta > 0 && beta < 1)) throw std::invalid_argument("check_coarse_mesh: beta in (0,1)");
    CoarseMeshReport rep;
    rep.eps_bound = eps > 0 ? std::pow(eps, -beta) : std::numeric_limits<double>::infinity();
    rep.k_bound = std::pow(k, beta);
    rep.n_le_eps_pow = N <= rep.eps_bound;
    rep.n_le_k_pow = N <= rep.k_bound;
    return rep;
}

double relative_error_E(const GridFunction2D& approx, const GridFunction2D& truth) {
    if (!(approx.grid == truth.grid))
        throw std::invalid_argument("relative_error_E: grid mismatch");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < truth.v.size(); ++i) {
        double d = approx.v[i] - truth.v[i];
        num += d * d;
        den += truth.v[i] * truth.v[i];
    }
    if (den == 0.0) throw std::invalid_argument("relative_error_E: zero reference");
    return 100.0 * std::sqrt(num) / std::sqrt(den);
}

} // namespace helmstab
