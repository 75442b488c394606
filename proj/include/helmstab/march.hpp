#pragma once

#include <vector>

#include "helmstab/grid.hpp"
#include "helmstab/spectral.hpp"

namespace helmstab {

struct StabilizationParams {
    double k = 5.0;
    double eta = 5.0;
    int q = 1;
    GridSpec grid;
    int jmax = 0; // 0 means N-1

    double log_gamma() const { return 2.0 * k - eta; }
    int modes() const { return jmax > 0 ? jmax : grid.N - 1; }
    // Throws on: eta out of (0,k]; step constraint lg*dx*e^{lg*dx} >= 1;
    // dx > dy; explicit-march stability dx^2 * mu_max > 4.
    void validate() const;
};

struct CauchySlice {
    Slice value; // Dirichlet datum at x=0; Neumann datum is identically 0
};

// One linearization sweep on sine-coefficient rows. src holds the previous
// iterate's coefficients, (M+1) x jmax row-major; c0 is the datum's
// coefficients. Marches
//   c_{m+1} = 2 c_m - c_{m-1} + dx^2 (s_j c_m + b_j src_{m,j}),
//   c_1 = c_0 + (dx^2/2)(s_j c_0 + b_j src_{0,j}),
// with s_j = +lambda_j for oscillatory modes and -lambda_j for all growing
// modes (the wave operator flips them; the band is driven back to cosh growth
// by b_j = 2 lambda_j at the sweep fixed point, B stays flipped to cos). This
// is the decoupled form of the stabilized wave system with the exact spectral
// y-second-derivative.
std::vector<double> march_once_coeffs(const std::vector<double>& src,
                                      const std::vector<double>& c0,
                                      const FrequencyPartition& part, GridSpec grid);

// Grid-level sweep: analyse rows of the previous iterate, march, synthesize.
GridFunction2D march_once(const GridFunction2D& source_prev, const CauchySlice& data,
                          const StabilizationParams& params);

// Initial guess = constant-in-x extension of the datum, then q sweeps.
GridFunction2D solve_V(const CauchySlice& data, const StabilizationParams& params);

// The u1 = 0 reduction: identical marching applied to the Cauchy datum
// directly (equals solve_V with U = 0).
GridFunction2D solve_u_eps_direct(const CauchySlice& data, const StabilizationParams& params);

// Coefficient trajectories of solve_V (row m holds the marched coefficients
// at x_m); used by the mode-oracle and bound tests.
std::vector<double> solve_V_coeffs(const CauchySlice& data, const StabilizationParams& params);

} // namespace helmstab
