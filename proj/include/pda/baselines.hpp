#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pda/criteria.hpp"

namespace pda {

// Baseline k for the single-criterion detectors.
inline constexpr int kBaselineNeighbors = 6;

// i.i.d. uniform draws on the (K-1)-simplex (normalized unit-rate
// exponentials), deterministic per seed.
std::vector<std::vector<double>> sample_simplex_weights(std::size_t criteria,
                                                        std::size_t count,
                                                        std::uint64_t seed);

// count evenly spaced 2D weights from (0,1) to (1,0).
std::vector<std::vector<double>> grid_weights_2d(std::size_t count);

// Sum_l w_l * stack_l as a dense N x N matrix; weights must have K entries.
std::vector<double> scalarize_matrix(const DissimilarityStack& stack,
                                     std::span<const double> weights);

// Scalarize K test-to-train rows into one row of length N.
std::vector<double> scalarize_rows(const std::vector<std::vector<double>>& rows,
                                   std::span<const double> weights);

// kth smallest / sum of the k smallest test-to-train dissimilarities.
double knn_score(std::span<const double> dists, int k);
double knn_sum_score(std::span<const double> dists, int k);

// Rank-based localized p-value score. Training G values are leave-one-out
// kth-NN distances; the score of x is 1 - (1/N) sum_i 1{G(X_i) >= G(x)}.
struct KlpeReference {
    std::vector<double> train_g;
    int k = 0;
};
KlpeReference klpe_reference(std::span<const double> train_matrix, std::size_t n, int k);
double klpe_score(const KlpeReference& ref, std::span<const double> test_dists);
double klpe_score(std::span<const double> train_matrix, std::size_t n,
                  std::span<const double> test_dists, int k);

// Local outlier factor with tie-inclusive neighborhoods and the reachability
// floor; a point whose reachability sum is zero gets lrd capped at 1/1e-12.
struct LofReference {
    std::vector<double> k_distance;  // per training point, leave-one-out
    std::vector<double> lrd;         // per training point
    int k = 0;
};
LofReference lof_reference(std::span<const double> train_matrix, std::size_t n, int k);
double lof_score(const LofReference& ref, std::span<const double> test_dists);
double lof_score(std::span<const double> train_matrix, std::size_t n,
                 std::span<const double> test_dists, int k);

inline constexpr double kLofDensityCap = 1e12;

}  // namespace pda
