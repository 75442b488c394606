#include "helmstab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmstab {

FrequencyPartition make_partition(double k, double eta, int jmax) {
    if (k <= 0) throw std::invalid_argument("make_partition: k must be positive");
    if (!(eta > 0 && eta <= k)) throw std::invalid_argument("make_partition: need 0 < eta <= k");
    if (jmax < 1) throw std::invalid_argument("make_partition: jmax < 1");
    FrequencyPartition p;
    p.k = k;
    p.eta = eta;
    p.log_gamma = 2.0 * k - eta;
    p.jmax = jmax;
    p.mu.resize(jmax);
    p.lambda.resize(jmax);
    p.set.resize(jmax);
    const double thresh = p.log_gamma * p.log_gamma;
    for (int j = 1; j <= jmax; ++j) {
        double mu = (j * std::numbers::pi) * (j * std::numbers::pi);
        double lam = mu - k * k;
        p.mu[j - 1] = mu;
        p.lambda[j - 1] = lam;
        if (std::abs(lam) < 1e-12 * mu)
            p.set[j - 1] = ModeSet::A2;
        else if (lam < 0)
            p.set[j - 1] = ModeSet::A3;
        else if (lam > thresh)
            p.set[j - 1] = ModeSet::B;
        else
            p.set[j - 1] = ModeSet::band;
    }
    return p;
}

std::vector<double> apply_Q(const std::vector<double>& c, const FrequencyPartition& p) {
    std::vector<double> out(c.size(), 0.0);
    for (int j = 1; j <= p.jmax; ++j)
        if (p.in_B(j) || p.in_A3(j)) out[j - 1] = 2.0 * p.lambda[j - 1] * c[j - 1];
    return out;
}

std::vector<double> apply_P(const std::vector<double>& c, const FrequencyPartition& p) {
    std::vector<double> out(c.size(), 0.0);
    const double k2 = p.k * p.k;
    for (int j = 1; j <= p.jmax; ++j) {
        double v = -2.0 * k2 * c[j - 1];
        if (p.in_band(j)) v -= 2.0 * p.lambda[j - 1] * c[j - 1];
        out[j - 1] = v;
    }
    return out;
}

std::vector<double> apply_P1(const std::vector<double>& c, const FrequencyPartition& p) {
    std::vector<double> out(c.size(), 0.0);
    for (int j = 1; j <= p.jmax; ++j)
        if (p.in_band(j)) out[j - 1] = -2.0 * p.lambda[j - 1] * c[j - 1];
    return out;
}

std::vector<double> apply_d2y(const std::vector<double>& c, const FrequencyPartition& p) {
    std::vector<double> out(c.size(), 0.0);
    for (int j = 1; j <= p.jmax; ++j) out[j - 1] = -p.mu[j - 1] * c[j - 1];
    return out;
}

Slice apply_Q(const Slice& f, const FrequencyPartition& p, const SineBasis& basis) {
    return basis.inverse(apply_Q(basis.forward(f), p));
}

Slice apply_P(const Slice& f, const FrequencyPartition& p, const SineBasis& basis) {
    return basis.inverse(apply_P(basis.forward(f), p));
}

namespace {

double lambda_of(int j, double k) {
    double mu = (j * std::numbers::pi) * (j * std::numbers::pi);
    return mu - k * k;
}

bool effectively_zero(double lam, int j) {
    double mu = (j * std::numbers::pi) * (j * std::numbers::pi);
    return std::abs(lam) < 1e-12 * mu;
}

} // namespace

double true_coefficient(int j, double x, double k, double c0) {
    if (c0 == 0.0) return 0.0; // keep inactive huge modes from producing inf*0
    double lam = lambda_of(j, k);
    if (effectively_zero(lam, j)) return c0;
    if (lam > 0) return std::cosh(std::sqrt(lam) * x) * c0;
    return std::cos(std::sqrt(-lam) * x) * c0;
}

double true_x_derivative_coefficient(int j, double x, double k, double c0) {
    double lam = lambda_of(j, k);
    if (!(lam > 0) || effectively_zero(lam, j))
        throw std::invalid_argument("true_x_derivative_coefficient: mode is not growing");
    double r = std::sqrt(lam);
    return r * std::sinh(r * x) * c0;
}

double true_x_derivative_any(int j, double x, double k, double c0) {
    if (c0 == 0.0) return 0.0;
    double lam = lambda_of(j, k);
    if (effectively_zero(lam, j)) return 0.0;
    if (lam > 0) {
        double r = std::sqrt(lam);
        return r * std::sinh(r * x) * c0;
    }
    double r = std::sqrt(-lam);
    return -r * std::sin(r * x) * c0;
}

double relation_rhs(int j, double k, double c0) {
    double lam = lambda_of(j, k);
    if (!(lam > 0) || effectively_zero(lam, j))
        throw std::invalid_argument("relation_rhs: mode is not growing");
    double r = std::sqrt(lam);
    return lam * true_coefficient(j, 1.0, k, c0) + r * true_x_derivative_coefficient(j, 1.0, k, c0);
}

double relation_residual(int j, double x, double k, double c0) {
    double lam = lambda_of(j, k);
    if (!(lam > 0) || effectively_zero(lam, j))
        throw std::invalid_argument("relation_residual: mode is not growing");
    double r = std::sqrt(lam);
    double lhs = lam * std::exp((1.0 - x) * r) *
                 (true_coefficient(j, x, k, c0) + true_x_derivative_coefficient(j, x, k, c0) / r);
    return lhs - relation_rhs(j, k, c0);
}

double stabilized_coefficient(int j, double x, double k, double gamma, double c0) {
    if (!(gamma > 1.0)) throw std::invalid_argument("stabilized_coefficient: gamma must exceed 1");
    double lam = lambda_of(j, k);
    if (effectively_zero(lam, j)) return c0;
    if (lam < 0) return std::cos(std::sqrt(-lam) * x) * c0;
    double lg = std::log(gamma);
    if (lam > lg * lg) return std::cos(std::sqrt(lam) * x) * c0;
    return std::cosh(std::sqrt(lam) * x) * c0;
}

GridFunction2D synthesize_true_solution(const std::vector<double>& u0_coeffs, double k,
                                        GridSpec grid) {
    const int jmax = int(u0_coeffs.size());
    for (int j = 1; j <= jmax; ++j) {
        double lam = lambda_of(j, k);
        if (lam > 0 && std::sqrt(lam) > 700.0 && u0_coeffs[j - 1] != 0.0)
            throw std::overflow_error("synthesize_true_solution: mode growth overflows double range");
    }
    SineBasis basis(grid.N, jmax);
    GridFunction2D u(grid);
    std::vector<double> row(jmax);
    for (int m = 0; m <= grid.M; ++m) {
        double x = grid.x(m);
        for (int j = 1; j <= jmax; ++j)
            row[j - 1] = true_coefficient(j, x, k, u0_coeffs[j - 1]);
        basis.inverse_interior(row.data(), u.row(m) + 1);
    }
    return u;
}

double error_bound_rhs(double x, const ErrorBoundParams& params) {
    const double k = params.k;
    const double data_term =
        (1.0 / (k * k) + 1.0) * params.eps * params.eps * std::exp((4.0 * k + 1.0) * x);
    const double trunc_term = 16.0 * params.M_norm * params.M_norm *
                              std::exp(4.0 * k * (x - 1.0) + 2.0 * params.eta + x) * x / (k * k);
    return data_term + trunc_term;
}

double m_norm_from_true(const std::vector<double>& u0_coeffs, double k, int x_samples) {
    const int jmax = int(u0_coeffs.size());
    double sup_h2 = 0.0, sup_h1 = 0.0, sup_h1_dx = 0.0;
    for (int m = 0; m <= x_samples; ++m) {
        double x = double(m) / x_samples;
        double h2 = 0.0, h1 = 0.0, h1d = 0.0;
        for (int j = 1; j <= jmax; ++j) {
            double mu = (j * std::numbers::pi) * (j * std::numbers::pi);
            double c = true_coefficient(j, x, k, u0_coeffs[j - 1]);
            double cd = true_x_derivative_any(j, x, k, u0_coeffs[j - 1]);
            h2 += (1.0 + mu + mu * mu) * c * c;
            h1 += (1.0 + mu) * c * c;
            h1d += (1.0 + mu) * cd * cd;
        }
        sup_h2 = std::max(sup_h2, h2);
        sup_h1 = std::max(sup_h1, h1);
        sup_h1_dx = std::max(sup_h1_dx, h1d);
    }
    return std::sqrt(sup_h2) + std::sqrt(sup_h1) + std::sqrt(sup_h1_dx);
}

} // namespace helmstab
