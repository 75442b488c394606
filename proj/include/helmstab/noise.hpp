#pragma once

#include <cstdint>
#include <vector>

#include "helmstab/grid.hpp"

namespace helmstab {

struct NoiseModel {
    double eps = 0.0;
    std::uint64_t seed = 1;
    double beta = 0.5; // exponent for the coarse-mesh checks
};

// i.i.d. uniform draws on [-1, 1), bit-reproducible: mt19937_64 outputs
// mapped via (x >> 11) * 2^-53. std::uniform_real_distribution is
// deliberately avoided (implementation-defined sequences).
std::vector<double> rand_unit(std::uint64_t seed, int count);

// u0_eps(y_n) = u0(y_n) + eps * rand_n at interior nodes; endpoints are
// clamped to 0 (they are Dirichlet-fixed corner values).
Slice add_noise(const Slice& u0, const NoiseModel& model);

// Discrete H1 norm of a perturbation slice: L2 plus forward-difference
// gradient L2. The additive-noise model only controls the L2 part; this is
// the monitor for how far a realization is from the H1 smallness assumption.
double h1_norm(const Slice& delta, double dy);
double l2_norm(const Slice& delta, double dy);

struct CoarseMeshReport {
    bool n_le_eps_pow = false; // N <= eps^{-beta}
    bool n_le_k_pow = false;   // N <= k^{beta}
    double eps_bound = 0.0;
    double k_bound = 0.0;
    bool satisfied() const { return n_le_eps_pow || n_le_k_pow; }
};

// The coarse-mesh condition under which plain additive noise practically
// yields H1-small data.
CoarseMeshReport check_coarse_mesh(double eps, double k, int N, double beta);

// Relative grid-l2 error in percent over all nodes:
//   100 * sqrt(sum (a - b)^2) / sqrt(sum b^2)
double relative_error_E(const GridFunction2D& approx, const GridFunction2D& truth);

} // namespace helmstab
