// Command-line harness: reference-problem runs, analytic self-checks, and
// noise-level sweeps. See README for the file formats.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <helmstab/helmstab.hpp>

namespace {

using namespace helmstab;

bool parse_grid(const std::string& s, int& M, int& N) {
    return std::sscanf(s.c_str(), "%dx%d", &M, &N) == 2 && M >= 2 && N >= 2;
}

void print_record(const RunRecord& rec) {
    std::printf("noiseless floor: E = %.4f%%\n", rec.E_noiseless);
    for (const EpsSummary& s : rec.summary)
        std::printf("eps = %-8g mean E = %9.4f%%  (stddev %.4f, %d seeds)\n", s.eps, s.mean_E,
                    s.stddev_E, s.n_seeds);
    for (const std::string& w : rec.warnings) std::printf("warning: %s\n", w.c_str());
}

int cmd_run(ExperimentConfig cfg) {
    RunRecord rec = run_example(cfg);
    print_record(rec);
    std::printf("outputs in %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_sweep(ExperimentConfig cfg, double a, double b, int steps) {
    cfg.write_grids = false;
    cfg.heatmaps = false;
    std::vector<double> eps;
    if (steps == 1) {
        eps.push_back(a);
    } else {
        for (int i = 0; i < steps; ++i) eps.push_back(a + (b - a) * i / (steps - 1));
    }
    cfg.eps = eps;
    RunRecord rec = run_example(cfg);
    print_record(rec);
    std::printf("outputs in %s\n", cfg.out_dir.c_str());
    return 0;
}

struct CheckLog {
    int failures = 0;
    void report(bool ok, const std::string& name, const std::string& detail) {
        std::printf("%s %s: %s\n", ok ? "ok  " : "FAIL", name.c_str(), detail.c_str());
        if (!ok) ++failures;
    }
};

// Analytic self-checks: everything here has an exact expected answer that is
// independent of the solvers under test.
int cmd_oracle_check() {
    CheckLog log;
    char buf[160];

    {
        FrequencyPartition p5 = make_partition(5.0, 5.0, 79);
        FrequencyPartition p50 = make_partition(50.0, 50.0, 79);
        auto count = [](const FrequencyPartition& p, ModeSet s) {
            int c = 0;
            for (int j = 1; j <= p.jmax; ++j)
                if (p.at(j) == s) ++c;
            return c;
        };
        bool ok5 = count(p5, ModeSet::A3) == 1 && count(p5, ModeSet::band) == 1 &&
                   count(p5, ModeSet::B) == 77 && p5.in_A3(1) && p5.in_band(2);
        bool ok50 = count(p50, ModeSet::A3) == 15 && count(p50, ModeSet::band) == 7 &&
                    count(p50, ModeSet::B) == 57 && p50.in_A3(15) && p50.in_band(16) &&
                    p50.in_band(22) && p50.in_B(23);
        log.report(ok5, "partition k=5", "A3={1}, band={2}, B={3..79}");
        log.report(ok50, "partition k=50", "A3={1..15}, band={16..22}, B={23..79}");
    }

    {
        SineBasis basis(80, 79);
        std::mt19937_64 rng(7);
        double worst_rt = 0.0, worst_pv = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            Slice f(81, 0.0);
            for (int n = 1; n < 80; ++n) f[n] = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
            auto c = basis.forward(f);
            Slice f2 = basis.inverse(c);
            double num = 0, den = 0, sc = 0, sf = 0;
            for (int n = 0; n <= 80; ++n) {
                num += (f2[n] - f[n]) * (f2[n] - f[n]);
                den += f[n] * f[n];
                sf += f[n] * f[n];
            }
            for (double v : c) sc += v * v;
            worst_rt = std::max(worst_rt, std::sqrt(num / den));
            worst_pv = std::max(worst_pv, std::abs(sc - sf / 80.0) / (sf / 80.0));
        }
        std::snprintf(buf, sizeof buf, "round-trip %.2e, parseval %.2e (20 random slices)",
                      worst_rt, worst_pv);
        log.report(worst_rt < 1e-12 && worst_pv < 1e-12, "sine transform", buf);
    }

    {
        double worst = 0.0;
        for (double k : {5.0, 50.0}) {
            FrequencyPartition p = make_partition(k, k, 79);
            for (int j = 1; j <= 79; ++j) {
                if (!p.in_A1(j)) continue;
                for (int i = 0; i <= 100; ++i) {
                    double x = i / 100.0;
                    double r = relation_residual(j, x, k, 1.0) / relation_rhs(j, k, 1.0);
                    worst = std::max(worst, std::abs(r));
                }
            }
        }
        std::snprintf(buf, sizeof buf, "max relative residual %.2e (k=5,50; 101-point x grid)",
                      worst);
        log.report(worst < 1e-10, "growing-mode relation", buf);
    }

    {
        FrequencyPartition p = make_partition(5.0, 5.0, 79);
        std::mt19937_64 rng(11);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> c(79);
            for (double& v : c) v = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
            auto lhs = apply_P(c, p);
            auto q = apply_Q(c, p);
            auto d = apply_d2y(c, p);
            double num = 0, den = 0;
            for (int i = 0; i < 79; ++i) {
                double r = lhs[i] - (q[i] + 2.0 * d[i]);
                num += r * r;
                den += lhs[i] * lhs[i];
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        std::snprintf(buf, sizeof buf, "max relative defect %.2e (20 random coefficient sets)",
                      worst);
        log.report(worst < 1e-10, "operator identity P = Q + 2*d2y", buf);
    }

    {
        // marched single-mode profiles against the closed-form mode solutions
        GridSpec grid{400, 80};
        SineBasis basis(80, 79);
        double gamma = std::exp(5.0);
        double worst = 0.0;
        for (int j : {1, 2, 3, 5}) {
            StabilizationParams sp;
            sp.k = 5.0;
            sp.eta = 5.0;
            sp.q = 16;
            sp.grid = grid;
            CauchySlice data;
            data.value.resize(81, 0.0);
            for (int n = 0; n <= 80; ++n) data.value[n] = basis.phi(j, n);
            auto C = solve_V_coeffs(data, sp);
            double num = 0, den = 0;
            for (int m = 0; m <= 400; ++m) {
                double want = stabilized_coefficient(j, grid.x(m), 5.0, gamma, 1.0);
                double got = C[size_t(m) * 79 + (j - 1)];
                num += (got - want) * (got - want);
                den += want * want;
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
        std::snprintf(buf, sizeof buf, "max relative L2 profile error %.2e (k=5, j=1,2,3,5)",
                      worst);
        log.report(worst < 1e-3, "mode oracle march", buf);
    }

    {
        // separable forward-solver oracle on a coarse grid
        double k = 5.0;
        double a = std::sqrt(k * k - std::numbers::pi * std::numbers::pi);
        GridSpec grid{64, 64};
        Slice u0(65), g(65);
        for (int n = 0; n <= 64; ++n) {
            double y = grid.y(n);
            u0[n] = std::sin(std::numbers::pi * y);
            g[n] = std::cos(a) * std::sin(std::numbers::pi * y);
        }
        GridFunction2D u = solve_dirichlet(u0, g, k, grid);
        double worst = 0.0;
        for (int m = 0; m <= 64; ++m)
            for (int n = 0; n <= 64; ++n) {
                double want = std::cos(a * grid.x(m)) * std::sin(std::numbers::pi * grid.y(n));
                worst = std::max(worst, std::abs(u.at(m, n) - want));
            }
        std::snprintf(buf, sizeof buf, "max node error %.2e vs cos(ax)sin(pi y) on 64x64", worst);
        log.report(worst < 2e-3, "forward solver oracle", buf);
    }

    std::printf(log.failures == 0 ? "all oracle checks passed\n"
                                  : "%d oracle check(s) failed\n",
                log.failures);
    return log.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stabilized marching reconstruction for the two-dimensional "
                 "Helmholtz problem with one-sided Cauchy data"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string grid_str, eps_range;
    bool k_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--example", cfg.example, "reference problem (1 or 2)")
            ->check(CLI::IsMember({1, 2}))
            ->required();
        sub->add_option("--k", cfg.k, "wavenumber (defaults to the example's value)")
            ->each([&](const std::string&) { k_given = true; });
        sub->add_option("--eta", cfg.eta, "truncation offset, 0 < eta <= k (default k)");
        sub->add_option("--grid", grid_str, "grid as MxN (default 400x80)");
        sub->add_option("--q", cfg.q, "linearization sweeps (default 1)");
        sub->add_option("--seeds", cfg.seeds, "noise seeds (comma separated)")->delimiter(',');
        sub->add_option("--out", cfg.out_dir, "output directory (default out)");
        sub->add_flag("--heatmaps", cfg.heatmaps, "also write PPM heatmaps");
    };

    CLI::App* run = app.add_subcommand("run", "run a reference problem and write grids/metrics");
    add_common(run);
    run->add_option("--eps", cfg.eps, "noise levels (comma separated, default 0.99,0.1)")
        ->delimiter(',');

    CLI::App* sweep = app.add_subcommand("sweep", "seed-averaged E over a range of noise levels");
    add_common(sweep);
    sweep->add_option("--eps-range", eps_range, "A:B:STEPS, linear spacing inclusive")->required();

    CLI::App* oracle = app.add_subcommand("oracle-check", "run the analytic self-check battery");

    CLI11_PARSE(app, argc, argv);

    try {
        if (oracle->parsed()) return cmd_oracle_check();

        if (!k_given && cfg.example == 2) cfg.k = 50.0;
        if (!grid_str.empty()) {
            if (!parse_grid(grid_str, cfg.M, cfg.N)) {
                std::fprintf(stderr, "error: --grid expects MxN with M,N >= 2\n");
                return 2;
            }
        }
        if (run->parsed()) return cmd_run(cfg);

        double a = 0, b = 0;
        int steps = 0;
        if (std::sscanf(eps_range.c_str(), "%lf:%lf:%d", &a, &b, &steps) != 3 || steps < 1) {
            std::fprintf(stderr, "error: --eps-range expects A:B:STEPS\n");
            return 2;
        }
        return cmd_sweep(cfg, a, b, steps);
    } catch (const NearSingularError& e) {
        std::fprintf(stderr, "error: %s (eigenvalue estimate %.6g, cond %.3g)\n", e.what(),
                     e.eigenvalue_estimate, e.cond_estimate);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
