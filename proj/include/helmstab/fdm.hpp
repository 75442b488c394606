#pragma once

#include <stdexcept>
#include <string>

#include "helmstab/grid.hpp"

namespace helmstab {

// Raised when k^2 sits too close to a discrete Laplacian eigenvalue for the
// requested grid; carries the estimated offending eigenvalue.
struct NearSingularError : std::runtime_error {
    double eigenvalue_estimate;
    double cond_estimate;
    NearSingularError(const std::string& msg, double eig, double cond)
        : std::runtime_error(msg), eigenvalue_estimate(eig), cond_estimate(cond) {}
};

// Five-point central scheme for u_xx + u_yy + k^2 u = 0 with Dirichlet data
// on all four sides (u0 at x=0, g at x=1, zero at y=0,1).
GridFunction2D solve_dirichlet(const Slice& u0, const Slice& g, double k, GridSpec grid);

// Neumann slice from the rearranged first-order relation
// u0(y_n) = u1(y_n) dx + u(x_1, y_n), i.e. u1 = (u0 - u(x_1, .)) / dx.
// Note this equals -u_x(0,.) + O(dx).
Slice generate_neumann_data(const GridFunction2D& u_true, const Slice& u0);

// Same scheme with the u1 slice as Neumann data at x=0 (ghost-node
// elimination, second order) and zero Dirichlet at x=1, y=0,1. The sign
// convention matches generate_neumann_data: the ghost row satisfies
// U_{-1} = U_1 + 2 dx u1, i.e. U_x(0,.) = -u1; this is what makes
// V = u - U carry a zero Neumann trace at x=0.
GridFunction2D solve_U(const Slice& u1, double k, GridSpec grid);

// Max interior residual of the five-point scheme (boundary rows untouched).
double interior_residual_inf(const GridFunction2D& u, double k);

} // namespace helmstab
