#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pda/criteria.hpp"

namespace pda {

// --- Categorical mixture ------------------------------------------------------

struct CategoricalConfig {
    int groups = 6;                  // K
    int attrs_per_group = 20;
    int min_cardinality = 6;
    int max_cardinality = 10;
    double nominal_alpha1 = 5.0;     // Dir(5, 1, ..., 1) for nominal attributes
    double anomaly_rate = 0.5;
    int n_train = 400;
    int n_test = 400;
    std::uint64_t seed = 0;
};

// p_i = i / (K (K + 1)): the unique solution of p_i/p_j = i/j with sum 1/2.
std::vector<double> group_probabilities(int groups);

struct CategoricalSimulation {
    CategoricalDataset train;  // all nominal, no labels
    CategoricalDataset test;   // labeled, anomalous with probability 0.5
};

// One run of the categorical simulation: cardinalities and nominal Dirichlet
// parameters are drawn once; each anomalous test sample redraws the parameters
// of one group (picked with the p_i weights) from Dir(1, ..., 1).
CategoricalSimulation gen_categorical_dataset(const CategoricalConfig& cfg);

// --- Points and dyads ----------------------------------------------------------

// n i.i.d. uniform points in [0,1]^d, row-major.
std::vector<double> gen_uniform_points(std::size_t n, std::size_t d, std::uint64_t seed);

// n i.i.d. points with density proportional to 1 + x_1 + ... + x_d on [0,1]^d
// (rejection sampled).
std::vector<double> gen_linear_density_points(std::size_t n, std::size_t d,
                                              std::uint64_t seed);

// C(n,2) dyads with coordinates |x_i^(l) - x_j^(l)|, row-major.
std::vector<double> points_to_dyads(std::span<const double> points, std::size_t n,
                                    std::size_t d);

// --- Synthetic trajectories ----------------------------------------------------

struct TrajectoryGenConfig {
    double base_speed = 1.0;
    double speed_sigma = 0.1;      // total speed spread; split 0.6/0.8 between
                                   // the per-walker pace and the per-step noise
    double heading_sigma = 0.015;  // per-step drift, radians
    double position_noise = 0.05;  // waypoint jitter
    double scene_size = 60.0;      // walks enter at an edge, aimed at the middle
    int min_length = 20;
    int max_length = 60;
};

struct LabeledTrajectories {
    std::vector<Trajectory> trajectories;
    std::vector<std::uint8_t> labels;  // 1 = anomalous
};

// Nominal walks are near-straight at unit speed; anomalies are one of
// {speed x3, speed x0.25, zig-zag shape}, chosen uniformly.
LabeledTrajectories gen_synthetic_trajectories(std::size_t n_nominal,
                                               std::size_t n_anomalous,
                                               std::uint64_t seed,
                                               const TrajectoryGenConfig& cfg = {});

}  // namespace pda
