#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pda/detector.hpp"
#include "pda/eval.hpp"
#include "pda/nondominated_sort.hpp"

namespace pda {

inline const std::vector<std::string> kBaselineMethods = {"knn", "knn_sum", "klpe",
                                                          "lof"};

// --- Categorical simulation (multi-run, weight-swept baselines) -----------------

struct CategoricalExperimentConfig {
    int criteria = 6;
    int n_train = 400;
    int n_test = 400;
    int weights = 600;  // simplex draws for the scalarized baselines
    int runs = 20;
    int baseline_k = 6;
    Sorter sorter = Sorter::jensen;
    DepthMode depth_mode = DepthMode::exact;
    std::vector<std::string> methods = kBaselineMethods;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool capture_run0_scores = false;  // keep raw per-weight scores of run 0
};

// Raw per-weight baseline scores of the first run, for the results CSV.
struct Run0Scores {
    std::vector<std::uint8_t> labels;
    std::vector<double> pda;
    // method -> [weight][sample]
    std::map<std::string, std::vector<std::vector<double>>> baselines;
};

struct MethodRunSummary {
    double median_auc = 0.0;  // over the sampled weights
    double best_auc = 0.0;
};

struct CategoricalRun {
    double pda_auc = 0.0;
    std::vector<int> k;
    std::size_t fronts = 0;
    std::map<std::string, MethodRunSummary> baselines;
    // Mean per-weight-rank AUC needs the full profiles:
    std::map<std::string, std::vector<double>> profiles;  // sorted ascending
};

struct CategoricalExperimentResult {
    std::vector<CategoricalRun> runs;
    Run0Scores run0;  // populated when capture_run0_scores is set

    AucStat pda_stat() const;
    AucStat method_median_stat(const std::string& method) const;
    AucStat method_best_stat(const std::string& method) const;
    AucStat method_mean_stat(const std::string& method) const;  // mean over weights
    // Runs where PDA strictly beats the method's median-weight AUC.
    int wins_over_median(const std::string& method) const;
};

CategoricalExperimentResult run_categorical_experiment(
    const CategoricalExperimentConfig& cfg);

// --- Trajectory experiment (2 criteria, grid-swept weights, k sensitivity) ------

struct TrajectoryExperimentConfig {
    int n_train = 500;
    int n_test_nominal = 150;
    int n_test_anomalous = 50;
    int weight_grid = 100;
    int runs = 20;
    int baseline_k = 6;
    int bins = 20;
    int k_grid_min = 3;
    int k_grid_max = 10;
    bool sweep_k_grid = true;
    Sorter sorter = Sorter::jensen;
    DepthMode depth_mode = DepthMode::exact;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct TrajectoryRun {
    double pda_auc = 0.0;       // with the heuristic k
    std::vector<int> k;         // the heuristic choice
    std::map<std::string, MethodRunSummary> baselines;
    // AUC per (k1, k2) cell of the sensitivity grid, row-major over the grid.
    std::vector<double> k_grid_auc;
};

struct TrajectoryExperimentResult {
    std::vector<TrajectoryRun> runs;
    int k_grid_min = 0;
    int k_grid_max = -1;

    AucStat pda_stat() const;
    int wins_over_median_all_methods() const;
    // Mean-over-runs AUC per grid cell, and the heuristic's mean AUC.
    std::vector<double> mean_grid() const;
    double best_grid_auc() const;
};

TrajectoryExperimentResult run_trajectory_experiment(
    const TrajectoryExperimentConfig& cfg);

// --- Training-time scaling benchmark ---------------------------------------------

struct BenchConfig {
    Sorter sorter = Sorter::jensen;
    std::vector<int> n_grid;          // training sizes (criteria fixed at 2)
    std::vector<int> k_grid;          // criterion counts (N fixed at n_for_k)
    int n_for_k = 400;
    int repetitions = 3;
    std::uint64_t seed = 0;
};

struct BenchRow {
    double x = 0.0;  // N or K
    double median_seconds = 0.0;
    double normalized = 0.0;  // relative to the smallest grid point
};

struct BenchResult {
    std::vector<BenchRow> by_n;
    std::vector<BenchRow> by_k;
    double loglog_slope_n = 0.0;  // fitted exponent of time ~ N^alpha
};

BenchResult run_bench(const BenchConfig& cfg);

}  // namespace pda
