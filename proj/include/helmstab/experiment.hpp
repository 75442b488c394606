#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helmstab/grid.hpp"
#include "helmstab/noise.hpp"

namespace helmstab {

struct ExperimentConfig {
    int example = 1; // 1 or 2
    double k = 5.0;
    double eta = -1.0; // <0 means "use k"
    std::vector<double> eps{0.99, 0.1};
    int M = 400;
    int N = 80;
    int q = 1;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::string out_dir = "out";
    bool heatmaps = false;
    bool write_grids = true;
    double beta = 0.5;

    static ExperimentConfig for_example(int example);
    double eta_value() const { return eta > 0 ? eta : k; }
    GridSpec grid() const { return GridSpec{M, N}; }
};

struct MetricRow {
    double eps = 0;
    std::uint64_t seed = 0;
    double E_percent = 0;
    double noise_h1 = 0; // H1 size of the injected perturbation
    double wall_ms = 0;
    std::string grid_file; // empty when grids are not written
};

struct EpsSummary {
    double eps = 0;
    double mean_E = 0;
    double stddev_E = 0;
    int n_seeds = 0;
};

struct RunRecord {
    ExperimentConfig config;
    std::vector<MetricRow> rows;
    std::vector<EpsSummary> summary;
    std::vector<std::string> warnings;
    std::string truth_file;
    double E_noiseless = 0; // pipeline floor, run once per record
};

// Boundary data of the two reference problems, sampled on the y-grid with
// the corner samples forced to 0.
Slice example_u0(int example, GridSpec grid);
Slice example_g(int example, GridSpec grid);

// Full pipeline: truth -> Neumann data -> U -> per-(eps, seed) noisy datum ->
// V march -> composition -> E. Writes grids/metrics under config.out_dir
// unless io is false.
RunRecord run_example(const ExperimentConfig& config, bool io = true);

void emit_grid_csv(const GridFunction2D& u, const std::string& path);
GridFunction2D read_grid_csv(const std::string& path);
void emit_heatmap(const GridFunction2D& u, const std::string& path);
void emit_metrics_json(const RunRecord& record, const std::string& path);

} // namespace helmstab
