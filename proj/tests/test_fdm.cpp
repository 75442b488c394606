#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <helmstab/fdm.hpp>
#include <helmstab/grid.hpp>

using namespace helmstab;
using std::numbers::pi;

namespace {

// Separable Helmholtz solution for k > pi: cos(a x) sin(pi y), a^2 + pi^2 = k^2.
double sep_a(double k) { return std::sqrt(k * k - pi * pi); }

double sep_truth(double k, double x, double y) {
    return std::cos(sep_a(k) * x) * std::sin(pi * y);
}

double dirichlet_error(double k, int n_cells) {
    GridSpec grid{n_cells, n_cells};
    Slice u0(n_cells + 1), g(n_cells + 1);
    for (int n = 0; n <= n_cells; ++n) {
        u0[n] = sep_truth(k, 0.0, grid.y(n));
        g[n] = sep_truth(k, 1.0, grid.y(n));
    }
    GridFunction2D u = solve_dirichlet(u0, g, k, grid);
    double worst = 0.0;
    for (int m = 0; m <= n_cells; ++m)
        for (int n = 0; n <= n_cells; ++n)
            worst = std::max(worst, std::abs(u.at(m, n) - sep_truth(k, grid.x(m), grid.y(n))));
    return worst;
}

// Neumann-at-west oracle matched to the ghost sign convention: passing
// u1 = sin(pi y) asks for U_x(0,.) = -sin(pi y), which the separable field
// sin(a (1-x)) sin(pi y) / (a cos a) satisfies along with the zero walls.
double neumann_truth(double k, double x, double y) {
    double a = sep_a(k);
    return std::sin(a * (1.0 - x)) * std::sin(pi * y) / (a * std::cos(a));
}

double neumann_error(double k, int n_cells) {
    GridSpec grid{n_cells, n_cells};
    Slice u1(n_cells + 1);
    for (int n = 0; n <= n_cells; ++n) u1[n] = std::sin(pi * grid.y(n));
    GridFunction2D u = solve_U(u1, k, grid);
    double worst = 0.0;
    for (int m = 0; m <= n_cells; ++m)
        for (int n = 0; n <= n_cells; ++n)
            worst = std::max(worst, std::abs(u.at(m, n) - neumann_truth(k, grid.x(m), grid.y(n))));
    return worst;
}

} // namespace

TEST_CASE("grid containers index as documented") {
    GridSpec g{4, 2};
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.dy() == doctest::Approx(0.5));
    CHECK(g.x(3) == doctest::Approx(0.75));
    CHECK(g.rows() == 5);
    CHECK(g.cols() == 3);

    GridFunction2D u(g);
    REQUIRE(u.v.size() == 15);
    u.at(2, 1) = 7.0;
    CHECK(u.row(2)[1] == 7.0);
    CHECK(u.v[2 * 3 + 1] == 7.0);

    Slice t = extract_trace(u, 2);
    REQUIRE(t.size() == 3);
    CHECK(t[1] == 7.0);
    CHECK_THROWS_AS(extract_trace(u, 5), std::out_of_range);
    CHECK_THROWS_AS(extract_trace(u, -1), std::out_of_range);

    GridFunction2D w(g);
    w.at(2, 1) = 1.5;
    GridFunction2D s = compose_solution(u, w);
    CHECK(s.at(2, 1) == 8.5);
    GridFunction2D other(GridSpec{4, 3});
    CHECK_THROWS_AS(compose_solution(u, other), std::invalid_argument);
}

TEST_CASE("zero boundary data gives the zero solution") {
    GridSpec grid{24, 24};
    Slice z(25, 0.0);
    GridFunction2D u = solve_dirichlet(z, z, 5.0, grid);
    for (double v : u.v) CHECK(v == 0.0);
    GridFunction2D w = solve_U(z, 5.0, grid);
    for (double v : w.v) CHECK(v == 0.0);
}

TEST_CASE("dirichlet solver: boundary rows carry the data exactly") {
    GridSpec grid{16, 12};
    Slice u0(13), g(13);
    for (int n = 0; n <= 12; ++n) {
        u0[n] = sep_truth(5.0, 0.0, grid.y(n));
        g[n] = sep_truth(5.0, 1.0, grid.y(n));
    }
    u0.front() = u0.back() = g.front() = g.back() = 0.0;
    GridFunction2D u = solve_dirichlet(u0, g, 5.0, grid);
    for (int n = 0; n <= 12; ++n) {
        CHECK(u.at(0, n) == u0[n]);
        CHECK(u.at(16, n) == g[n]);
    }
    for (int m = 0; m <= 16; ++m) {
        CHECK(u.at(m, 0) == 0.0);
        CHECK(u.at(m, 12) == 0.0);
    }
}

TEST_CASE("dirichlet solver converges at second order") {
    double e40 = dirichlet_error(5.0, 40);
    double e80 = dirichlet_error(5.0, 80);
    double e160 = dirichlet_error(5.0, 160);
    INFO("errors ", e40, " ", e80, " ", e160);
    CHECK(e40 / e80 > 3.5);
    CHECK(e40 / e80 < 4.5);
    CHECK(e80 / e160 > 3.5);
    CHECK(e80 / e160 < 4.5);
}

TEST_CASE("dirichlet solver: discrete residual at rounding level") {
    GridSpec grid{60, 60};
    Slice u0(61), g(61);
    for (int n = 0; n <= 60; ++n) {
        u0[n] = sep_truth(5.0, 0.0, grid.y(n));
        g[n] = sep_truth(5.0, 1.0, grid.y(n));
    }
    GridFunction2D u = solve_dirichlet(u0, g, 5.0, grid);
    double scale = 0.0;
    for (double v : u.v) scale = std::max(scale, std::abs(v));
    scale *= 1.0 / (grid.dx() * grid.dx()); // operator magnification
    CHECK(interior_residual_inf(u, 5.0) <= 1e-8 * scale);
}

TEST_CASE("neumann data from the first-order relation") {
    GridSpec grid{40, 40};
    GridFunction2D u(grid);
    for (int m = 0; m <= 40; ++m)
        for (int n = 0; n <= 40; ++n) u.at(m, n) = neumann_truth(5.0, grid.x(m), grid.y(n));
    Slice u0 = extract_trace(u, 0);
    Slice u1 = generate_neumann_data(u, u0);
    // u1 should match -d/dx of the field at x=0 up to O(dx)
    double a = sep_a(5.0);
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n) {
        double exact = std::sin(pi * grid.y(n)); // -U_x(0,y) for this field
        worst = std::max(worst, std::abs(u1[n] - exact));
    }
    CHECK(worst < 0.6 * a * grid.dx()); // first-order remainder
    CHECK(worst > 1e-4);                // and genuinely first order, not exact
}

TEST_CASE("neumann solver converges at second order") {
    double e40 = neumann_error(5.0, 40);
    double e80 = neumann_error(5.0, 80);
    double e160 = neumann_error(5.0, 160);
    INFO("errors ", e40, " ", e80, " ", e160);
    CHECK(e40 / e80 > 3.5);
    CHECK(e40 / e80 < 4.5);
    CHECK(e80 / e160 > 3.5);
    CHECK(e80 / e160 < 4.5);
}

TEST_CASE("neumann solver: zero trace at the east wall and side walls") {
    GridSpec grid{32, 24};
    Slice u1(25);
    for (int n = 0; n <= 24; ++n) u1[n] = std::sin(pi * grid.y(n));
    GridFunction2D u = solve_U(u1, 5.0, grid);
    for (int n = 0; n <= 24; ++n) CHECK(u.at(32, n) == 0.0);
    for (int m = 0; m <= 32; ++m) {
        CHECK(u.at(m, 0) == 0.0);
        CHECK(u.at(m, 24) == 0.0);
    }
    // west value is an unknown, not data: nonzero here
    CHECK(std::abs(u.at(0, 12)) > 0.01);
}

TEST_CASE("resonant wavenumber is rejected with an eigenvalue estimate") {
    // smallest discrete Dirichlet Laplacian eigenvalue on an 8x8 grid:
    // 2 * (4/h^2) sin^2(pi/16), h = 1/8
    double lam = 512.0 * std::sin(pi / 16.0) * std::sin(pi / 16.0);
    double k = std::sqrt(lam);
    GridSpec grid{8, 8};
    Slice u0(9, 0.0), g(9, 0.0);
    for (int n = 1; n < 8; ++n) u0[n] = 1.0;
    try {
        solve_dirichlet(u0, g, k, grid);
        FAIL("expected NearSingularError");
    } catch (const NearSingularError& e) {
        CHECK(e.cond_estimate > 1e12);
        CHECK(e.eigenvalue_estimate == doctest::Approx(lam).epsilon(1e-6));
    }
    // a k^2 between eigenvalues on the same grid is fine
    CHECK_NOTHROW(solve_dirichlet(u0, g, 5.0, grid));
}

TEST_CASE("boundary slice size is validated") {
    GridSpec grid{8, 8};
    Slice wrong(5, 0.0), right(9, 0.0);
    CHECK_THROWS_AS(solve_dirichlet(wrong, right, 5.0, grid), std::invalid_argument);
    CHECK_THROWS_AS(solve_U(wrong, 5.0, grid), std::invalid_argument);
}
