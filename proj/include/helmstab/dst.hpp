#pragma once

#include <vector>

#include "helmstab/grid.hpp"

namespace helmstab {

// Sine basis phi_j(y) = sqrt(2) sin(j pi y) sampled on the interior nodes
// y_n = n/N. The Riemann-sum analysis
//   c_j = dy * sum_{n=1}^{N-1} f(y_n) phi_j(y_n)
// and the synthesis f_n = sum_j c_j phi_j(y_n) are exact inverses of each
// other for j_max = N-1 (discrete orthogonality of the sine family), which
// is what makes the coefficient-space marching equivalent to a grid scheme.
class SineBasis {
public:
    SineBasis(int N, int jmax);

    int N() const { return N_; }
    int modes() const { return jmax_; }
    double phi(int j, int n) const; // phi_j(y_n), 1<=j<=jmax, 0<=n<=N

    // slice (N+1 samples, endpoints ignored) -> coefficients (jmax)
    std::vector<double> forward(const Slice& f) const;
    // coefficients -> full slice with zero endpoints
    Slice inverse(const std::vector<double>& c) const;
    // synthesis of interior values only, into out[0..N-2]
    void inverse_interior(const double* c, double* out) const;
    // accumulate analysis of interior samples f[0..N-2] into c[0..jmax-1]
    // (unscaled; forward() applies the dy factor)
    void forward_interior_unscaled(const double* f, double* c) const;

private:
    int N_, jmax_;
    std::vector<double> phi_nj_; // (N-1) rows of length jmax: phi_j(y_n), j fast
    std::vector<double> phi_jn_; // jmax rows of length N-1: phi_j(y_n), n fast
};

} // namespace helmstab
