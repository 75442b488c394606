#pragma once

#include <vector>

#include "helmstab/dst.hpp"
#include "helmstab/grid.hpp"

namespace helmstab {

// Mode sets for lambda_j = (j pi)^2 - k^2 with threshold log^2(gamma):
//   A3: lambda < 0 (oscillatory modes)
//   A2: lambda = 0 (borderline, constant coefficient)
//   band: 0 <= lambda <= log^2(gamma) (growing modes kept)
//   B: lambda > log^2(gamma) (growing modes whose sign the scheme flips)
enum class ModeSet { A3, A2, band, B };

struct FrequencyPartition {
    double k = 0, eta = 0, log_gamma = 0;
    int jmax = 0;
    std::vector<double> mu;     // (j pi)^2, index j-1
    std::vector<double> lambda; // mu - k^2
    std::vector<ModeSet> set;

    ModeSet at(int j) const { return set[j - 1]; }
    bool in_B(int j) const { return at(j) == ModeSet::B; }
    bool in_A3(int j) const { return at(j) == ModeSet::A3; }
    bool in_band(int j) const { return at(j) == ModeSet::band || at(j) == ModeSet::A2; }
    bool in_A1(int j) const { return lambda[j - 1] > 0.0; }
};

// log(gamma) = 2k - eta, 0 < eta <= k.
FrequencyPartition make_partition(double k, double eta, int jmax);

// Spectral operators on coefficient vectors (index j-1).
std::vector<double> apply_Q(const std::vector<double>& c, const FrequencyPartition& p);
std::vector<double> apply_P(const std::vector<double>& c, const FrequencyPartition& p);
std::vector<double> apply_P1(const std::vector<double>& c, const FrequencyPartition& p);
// Second y-derivative multiplier: -mu_j c_j.
std::vector<double> apply_d2y(const std::vector<double>& c, const FrequencyPartition& p);

// Slice-level wrappers (analysis -> multiplier -> synthesis).
Slice apply_Q(const Slice& f, const FrequencyPartition& p, const SineBasis& basis);
Slice apply_P(const Slice& f, const FrequencyPartition& p, const SineBasis& basis);

// Coefficient of the exact Cauchy solution with zero Neumann datum:
// cosh(sqrt(lambda) x) c0 for lambda > 0, cos(sqrt(-lambda) x) c0 for
// lambda < 0, c0 in the lambda = 0 limit.
double true_coefficient(int j, double x, double k, double c0);
// d/dx of the above for growing modes only: sqrt(lambda) sinh(sqrt(lambda) x) c0.
double true_x_derivative_coefficient(int j, double x, double k, double c0);
// d/dx for any mode (used by the bound evaluator's norms).
double true_x_derivative_any(int j, double x, double k, double c0);

// Identity satisfied by growing-mode coefficients:
//   lambda e^{(1-x) sqrt(lambda)} (c(x) + c'(x)/sqrt(lambda))
//     = lambda c(1) + sqrt(lambda) c'(1).
// Returns LHS - RHS; |result| should be at rounding level relative to RHS.
double relation_residual(int j, double x, double k, double c0);
double relation_rhs(int j, double k, double c0);

// Coefficient of the stabilized system's mode solution: band modes keep the
// true cosh dynamics, B modes are flipped to cos(sqrt(lambda) x), and
// oscillatory (lambda < 0) modes keep their true cos dynamics. The last
// branch is what makes the marched reconstruction match the forward solver;
// flipping those modes too would grow them like cosh(sqrt(|lambda|) x) and
// ruin the reconstruction by a factor e^k.
double stabilized_coefficient(int j, double x, double k, double gamma, double c0);

// Sum of true-mode profiles on the grid. Throws if any active mode would
// overflow (sqrt(lambda) > 700).
GridFunction2D synthesize_true_solution(const std::vector<double>& u0_coeffs, double k,
                                        GridSpec grid);

struct ErrorBoundParams {
    double k = 0, eta = 0, eps = 0;
    double M_norm = 0;
};

// Right-hand side of the a-priori L2 error bound:
//   (1/k^2 + 1) eps^2 e^{(4k+1)x} + 16 M^2 e^{4k(x-1) + 2 eta + x} x / k^2
double error_bound_rhs(double x, const ErrorBoundParams& params);

// Bound constant computed from the synthesized true solution: the sum of the
// sup-in-x discrete H2 norm and the C^1-in-x discrete H1 norm, with
// ||v||_H2^2 = sum (1 + mu + mu^2) c^2 and ||v||_H1^2 = sum (1 + mu) c^2.
double m_norm_from_true(const std::vector<double>& u0_coeffs, double k, int x_samples);

} // namespace helmstab
