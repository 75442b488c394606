#include "helmstab/dst.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "helmstab/kernels.hpp"

namespace helmstab {

SineBasis::SineBasis(int N, int jmax) : N_(N), jmax_(jmax) {
    if (N < 2) throw std::invalid_argument("SineBasis: N < 2");
    if (jmax < 1 || jmax > N - 1) throw std::invalid_argument("SineBasis: need 1 <= jmax <= N-1");
    const double sqrt2 = std::sqrt(2.0);
    phi_nj_.resize(size_t(N - 1) * jmax);
    phi_jn_.resize(size_t(jmax) * (N - 1));
    for (int n = 1; n < N; ++n) {
        for (int j = 1; j <= jmax; ++j) {
            double v = sqrt2 * std::sin(std::numbers::pi * j * n / N);
            phi_nj_[size_t(n - 1) * jmax + (j - 1)] = v;
            phi_jn_[size_t(j - 1) * (N - 1) + (n - 1)] = v;
        }
    }
}

double SineBasis::phi(int j, int n) const {
    if (n == 0 || n == N_) return 0.0;
    return phi_jn_[size_t(j - 1) * (N_ - 1) + (n - 1)];
}

void SineBasis::forward_interior_unscaled(const double* f, double* c) const {
    for (int n = 1; n < N_; ++n)
        kernels::axpy(f[n - 1], &phi_nj_[size_t(n - 1) * jmax_], c, jmax_);
}

std::vector<double> SineBasis::forward(const Slice& f) const {
    if (int(f.size()) != N_ + 1) throw std::invalid_argument("SineBasis::forward: slice size");
    std::vector<double> c(jmax_, 0.0);
    forward_interior_unscaled(f.data() + 1, c.data());
    const double dy = 1.0 / N_;
    for (double& v : c) v *= dy;
    return c;
}

void SineBasis::inverse_interior(const double* c, double* out) const {
    for (int n = 0; n < N_ - 1; ++n) out[n] = 0.0;
    for (int j = 1; j <= jmax_; ++j)
        kernels::axpy(c[j - 1], &phi_jn_[size_t(j - 1) * (N_ - 1)], out, N_ - 1);
}

Slice SineBasis::inverse(const std::vector<double>& c) const {
    if (int(c.size()) != jmax_) throw std::invalid_argument("SineBasis::inverse: coefficient count");
    Slice f(N_ + 1, 0.0);
    inverse_interior(c.data(), f.data() + 1);
    return f;
}

} // namespace helmstab
