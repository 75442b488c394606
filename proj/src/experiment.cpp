#include "helmstab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "helmstab/fdm.hpp"
#include "helmstab/march.hpp"

namespace helmstab {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

ExperimentConfig ExperimentConfig::for_example(int example) {
    ExperimentConfig c;
    c.example = example;
    if (example == 2) c.k = 50.0;
    return c;
}

Slice example_u0(int example, GridSpec grid) {
    Slice u0(grid.N + 1, 0.0);
    if (example == 1) {
        for (int n = 1; n < grid.N; ++n) {
            double y = grid.y(n);
            double t = 0.0625 + std::pow(y - 0.5, 4); // 0.5^4 = 0.0625
            u0[n] = -std::exp(-2.0 * t) + t;
        }
    } else if (example != 2) {
        throw std::invalid_argument("example_u0: example must be 1 or 2");
    }
    return u0;
}

Slice example_g(int example, GridSpec grid) {
    if (example == 1) return example_u0(1, grid);
    if (example != 2) throw std::invalid_argument("example_g: example must be 1 or 2");
    Slice g(grid.N + 1, 0.0);
    for (int n = 1; n < grid.N; ++n) {
        double y = grid.y(n);
        double d2 = (y - 0.5) * (y - 0.5);
        g[n] = -std::sin(7.0 * std::sqrt(0.001 + d2)) / (7.0 * std::sqrt(1.0 + d2));
    }
    return g;
}

namespace {

std::string fmt_eps(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

double mean(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

double stddev(const std::vector<double>& v, double m) {
    if (v.size() < 2) return 0.0;
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
}

} // namespace

RunRecord run_example(const ExperimentConfig& config, bool io) {
    RunRecord rec;
    rec.config = config;
    const GridSpec grid = config.grid();
    if (grid.dx() > grid.dy())
        throw std::invalid_argument("run_example: config requires dx <= dy");

    const Slice u0 = example_u0(config.example, grid);
    const Slice g = example_g(config.example, grid);

    const GridFunction2D truth = solve_dirichlet(u0, g, config.k, grid);
    const Slice u1 = generate_neumann_data(truth, u0);
    const GridFunction2D U = solve_U(u1, config.k, grid);
    const Slice U0 = extract_trace(U, 0);

    StabilizationParams sp;
    sp.k = config.k;
    sp.eta = config.eta_value();
    sp.q = config.q;
    sp.grid = grid;
    sp.validate();

    const double lg = sp.log_gamma();
    if (!(lg * grid.dx() * std::exp(lg * grid.dx()) < 1.0))
        rec.warnings.push_back("step constraint violated");

    if (io) {
        fs::create_directories(config.out_dir);
        rec.truth_file = (fs::path(config.out_dir) / "truth.csv").string();
        emit_grid_csv(truth, rec.truth_file);
        if (config.heatmaps)
            emit_heatmap(truth, (fs::path(config.out_dir) / "truth.ppm").string());
    }

    auto reconstruct = [&](const Slice& u0_eps) {
        CauchySlice data;
        data.value.resize(grid.N + 1);
        for (int n = 0; n <= grid.N; ++n) data.value[n] = u0_eps[n] - U0[n];
        data.value[0] = data.value[grid.N] = 0.0;
        GridFunction2D V = solve_V(data, sp);
        return compose_solution(U, V);
    };

    // noiseless floor, reported once
    {
        NoiseModel nm{0.0, 0, config.beta};
        rec.E_noiseless = relative_error_E(reconstruct(add_noise(u0, nm)), truth);
    }

    for (double eps : config.eps) {
        CoarseMeshReport cm = check_coarse_mesh(eps, config.k, grid.N, config.beta);
        if (eps > 0 && !cm.satisfied())
            rec.warnings.push_back("coarse-mesh condition fails for eps=" + fmt_eps(eps));
        std::vector<double> es;
        for (std::uint64_t seed : config.seeds) {
            auto t0 = std::chrono::steady_clock::now();
            NoiseModel nm{eps, seed, config.beta};
            Slice u0_eps = add_noise(u0, nm);
            Slice delta(u0_eps.size());
            for (size_t i = 0; i < delta.size(); ++i) delta[i] = u0_eps[i] - u0[i];
            GridFunction2D u_eps = reconstruct(u0_eps);
            auto t1 = std::chrono::steady_clock::now();

            MetricRow row;
            row.eps = eps;
            row.seed = seed;
            row.E_percent = relative_error_E(u_eps, truth);
            row.noise_h1 = h1_norm(delta, grid.dy());
            row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (io && config.write_grids) {
                std::string name = "recon_eps" + fmt_eps(eps) + "_seed" + std::to_string(seed);
                fs::path p = fs::path(config.out_dir) / (name + ".csv");
                emit_grid_csv(u_eps, p.string());
                row.grid_file = p.string();
                if (config.heatmaps)
                    emit_heatmap(u_eps, (fs::path(config.out_dir) / (name + ".ppm")).string());
            }
            es.push_back(row.E_percent);
            rec.rows.push_back(std::move(row));
        }
        EpsSummary s;
        s.eps = eps;
        s.mean_E = mean(es);
        s.stddev_E = stddev(es, s.mean_E);
        s.n_seeds = int(es.size());
        rec.summary.push_back(s);
    }

    if (io)
        emit_metrics_json(rec, (fs::path(config.out_dir) / "metrics.json").string());
    return rec;
}

void emit_grid_csv(const GridFunction2D& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_grid_csv: cannot open " + path);
    out << "x,y,value\n";
    char buf[96];
    for (int m = 0; m <= u.grid.M; ++m) {
        for (int n = 0; n <= u.grid.N; ++n) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", u.grid.x(m), u.grid.y(n),
                          u.at(m, n));
            out << buf;
        }
    }
    if (!out) throw std::runtime_error("emit_grid_csv: write failed for " + path);
}

GridFunction2D read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_grid_csv: cannot open " + path);
    std::string line;
    std::getline(in, line); // header
    std::vector<double> xs, ys, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c);
        xs.push_back(std::stod(a));
        ys.push_back(std::stod(b));
        vs.push_back(std::stod(c));
    }
    // infer the grid from the node count pattern (m-major, y fastest)
    size_t cols = 1;
    while (cols < ys.size() && ys[cols] > ys[cols - 1]) ++cols;
    if (cols < 2 || vs.size() % cols != 0)
        throw std::runtime_error("read_grid_csv: malformed grid in " + path);
    GridSpec grid{int(vs.size() / cols) - 1, int(cols) - 1};
    GridFunction2D u(grid);
    u.v = vs;
    return u;
}

namespace {

// five-stop linear gradient, dark blue -> cyan -> green -> yellow -> red
void colormap(double t, unsigned char* rgb) {
    static const double stops[5][3] = {{0.05, 0.03, 0.35},
                                       {0.0, 0.65, 0.85},
                                       {0.1, 0.75, 0.3},
                                       {0.95, 0.85, 0.1},
                                       {0.8, 0.1, 0.1}};
    t = std::min(std::max(t, 0.0), 1.0);
    double s = t * 4.0;
    int i = std::min(int(s), 3);
    double f = s - i;
    for (int c = 0; c < 3; ++c) {
        double v = stops[i][c] * (1.0 - f) + stops[i + 1][c] * f;
        rgb[c] = static_cast<unsigned char>(std::lround(255.0 * v));
    }
}

} // namespace

void emit_heatmap(const GridFunction2D& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_heatmap: cannot open " + path);
    double lo = u.v[0], hi = u.v[0];
    for (double v : u.v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    const int W = u.grid.M + 1, H = u.grid.N + 1;
    out << "P6\n" << W << " " << H << "\n255\n";
    std::vector<unsigned char> rowbuf(size_t(W) * 3);
    for (int r = 0; r < H; ++r) {
        int n = u.grid.N - r; // top row is y = 1
        for (int m = 0; m < W; ++m)
            colormap((u.at(m, n) - lo) / span, &rowbuf[size_t(m) * 3]);
        out.write(reinterpret_cast<const char*>(rowbuf.data()), rowbuf.size());
    }
    if (!out) throw std::runtime_error("emit_heatmap: write failed for " + path);
}

void emit_metrics_json(const RunRecord& record, const std::string& path) {
    ordered_json root;
    const ExperimentConfig& c = record.config;
    root["config"] = {{"example", c.example}, {"k", c.k},       {"eta", c.eta_value()},
                      {"M", c.M},             {"N", c.N},       {"q", c.q},
                      {"eps", c.eps},         {"seeds", c.seeds}};
    root["E_noiseless_percent"] = record.E_noiseless;
    root["runs"] = ordered_json::array();
    for (const MetricRow& r : record.rows) {
        // wall_ms stays out of the file so that reruns of the same config
        // produce byte-identical metrics
        ordered_json row = {{"eps", r.eps},
                            {"seed", r.seed},
                            {"E_percent", r.E_percent},
                            {"noise_h1", r.noise_h1}};
        if (!r.grid_file.empty()) row["grid"] = r.grid_file;
        root["runs"].push_back(row);
    }
    root["summary"] = ordered_json::array();
    for (const EpsSummary& s : record.summary)
        root["summary"].push_back({{"eps", s.eps},
                                   {"mean_E_percent", s.mean_E},
                                   {"stddev_E_percent", s.stddev_E},
                                   {"seeds", s.n_seeds}});
    root["warnings"] = record.warnings;
    if (!record.truth_file.empty()) root["truth"] = record.truth_file;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_metrics_json: cannot open " + path);
    out << root.dump(2) << "\n";
}

} // namespace helmstab
