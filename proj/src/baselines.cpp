#include "pda/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pda/rng.hpp"

namespace pda {

std::vector<std::vector<double>> sample_simplex_weights(std::size_t criteria,
                                                        std::size_t count,
                                                        std::uint64_t seed) {
    if (criteria < 2) throw std::invalid_argument("simplex weights need K >= 2");
    if (count < 1) throw std::invalid_argument("simplex weights need count >= 1");
    std::mt19937_64 rng = make_rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<std::vector<double>> weights(count, std::vector<double>(criteria));
    for (auto& w : weights) {
        double total = 0.0;
        for (auto& v : w) {
            v = expo(rng);
            total += v;
        }
        for (auto& v : w) v /= total;
    }
    return weights;
}

std::vector<std::vector<double>> grid_weights_2d(std::size_t count) {
    if (count < 2) throw std::invalid_argument("grid_weights_2d: count must be >= 2");
    std::vector<std::vector<double>> weights(count, std::vector<double>(2));
    for (std::size_t i = 0; i < count; ++i) {
        const double w1 = static_cast<double>(i) / static_cast<double>(count - 1);
        weights[i][0] = w1;
        weights[i][1] = 1.0 - w1;
    }
    return weights;
}

std::vector<double> scalarize_matrix(const DissimilarityStack& stack,
                                     std::span<const double> weights) {
    if (weights.size() != stack.criteria()) {
        throw std::invalid_argument("scalarize_matrix: weight count mismatch");
    }
    const std::size_t n = stack.size();
    std::vector<double> out(n * n, 0.0);
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const double w = weights[l];
        if (w == 0.0) continue;
        const auto m = stack.matrix(l);
        for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] += w * m[idx];
    }
    return out;
}

std::vector<double> scalarize_rows(const std::vector<std::vector<double>>& rows,
                                   std::span<const double> weights) {
    if (rows.size() != weights.size() || rows.empty()) {
        throw std::invalid_argument("scalarize_rows: weight count mismatch");
    }
    std::vector<double> out(rows.front().size(), 0.0);
    for (std::size_t l = 0; l < rows.size(); ++l) {
        const double w = weights[l];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * rows[l][i];
    }
    return out;
}

namespace {

// kth smallest (1-based k) via partial selection.
double kth_smallest(std::span<const double> dists, int k, std::vector<double>& scratch) {
    scratch.assign(dists.begin(), dists.end());
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    return scratch[k - 1];
}

}  // namespace

double knn_score(std::span<const double> dists, int k) {
    if (k < 1 || static_cast<std::size_t>(k) >= dists.size()) {
        throw std::invalid_argument("knn_score: require 1 <= k < N");
    }
    std::vector<double> scratch;
    return kth_smallest(dists, k, scratch);
}

double knn_sum_score(std::span<const double> dists, int k) {
    if (k < 1 || static_cast<std::size_t>(k) >= dists.size()) {
        throw std::invalid_argument("knn_sum_score: require 1 <= k < N");
    }
    std::vector<double> scratch(dists.begin(), dists.end());
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    return std::accumulate(scratch.begin(), scratch.begin() + k, 0.0);
}

KlpeReference klpe_reference(std::span<const double> train_matrix, std::size_t n, int k) {
    if (train_matrix.size() != n * n) {
        throw std::invalid_argument("klpe_reference: matrix is not N x N");
    }
    if (k < 1 || static_cast<std::size_t>(k) + 1 >= n) {
        throw std::invalid_argument("klpe: leave-one-out needs k <= N - 2");
    }
    KlpeReference ref;
    ref.k = k;
    ref.train_g.resize(n);
    std::vector<double> scratch;
    scratch.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        scratch.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) scratch.push_back(train_matrix[i * n + j]);
        }
        std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
        ref.train_g[i] = scratch[k - 1];
    }
    return ref;
}

double klpe_score(const KlpeReference& ref, std::span<const double> test_dists) {
    if (test_dists.size() != ref.train_g.size()) {
        throw std::invalid_argument("klpe_score: test row length mismatch");
    }
    std::vector<double> scratch;
    const double g = kth_smallest(test_dists, ref.k, scratch);
    std::size_t at_least = 0;
    for (double v : ref.train_g) {
        if (v >= g) ++at_least;
    }
    const double p_hat = static_cast<double>(at_least) / static_cast<double>(ref.train_g.size());
    return 1.0 - p_hat;
}

double klpe_score(std::span<const double> train_matrix, std::size_t n,
                  std::span<const double> test_dists, int k) {
    return klpe_score(klpe_reference(train_matrix, n, k), test_dists);
}

namespace {

struct Neighborhood {
    double k_distance = 0.0;
    std::vector<std::uint32_t> members;  // all points within k_distance (ties included)
};

// Tie-inclusive k-nearest neighborhood of a row of distances, skipping `skip`
// (the point itself for training rows, none for test rows).
Neighborhood neighborhood_of(std::span<const double> dists, std::size_t skip, int k,
                             std::vector<double>& scratch) {
    scratch.clear();
    for (std::size_t j = 0; j < dists.size(); ++j) {
        if (j != skip) scratch.push_back(dists[j]);
    }
    std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
    Neighborhood nb;
    nb.k_distance = scratch[k - 1];
    for (std::size_t j = 0; j < dists.size(); ++j) {
        if (j != skip && dists[j] <= nb.k_distance) {
            nb.members.push_back(static_cast<std::uint32_t>(j));
        }
    }
    return nb;
}

double lrd_of(const Neighborhood& nb, std::span<const double> dists,
              std::span<const double> k_distance) {
    double reach_sum = 0.0;
    for (std::uint32_t j : nb.members) {
        reach_sum += std::max(k_distance[j], dists[j]);
    }
    if (reach_sum <= 0.0) return kLofDensityCap;
    return static_cast<double>(nb.members.size()) / reach_sum;
}

}  // namespace

LofReference lof_reference(std::span<const double> train_matrix, std::size_t n, int k) {
    if (train_matrix.size() != n * n) {
        throw std::invalid_argument("lof_reference: matrix is not N x N");
    }
    if (k < 1 || static_cast<std::size_t>(k) >= n) {
        throw std::invalid_argument("lof: require 1 <= k <= N - 1");
    }
    LofReference ref;
    ref.k = k;
    ref.k_distance.resize(n);
    ref.lrd.resize(n);

    std::vector<Neighborhood> neighborhoods(n);
    std::vector<double> scratch;
    for (std::size_t i = 0; i < n; ++i) {
        neighborhoods[i] =
            neighborhood_of(train_matrix.subspan(i * n, n), i, k, scratch);
        ref.k_distance[i] = neighborhoods[i].k_distance;
    }
    for (std::size_t i = 0; i < n; ++i) {
        ref.lrd[i] = lrd_of(neighborhoods[i], train_matrix.subspan(i * n, n),
                            ref.k_distance);
    }
    return ref;
}

double lof_score(const LofReference& ref, std::span<const double> test_dists) {
    if (test_dists.size() != ref.k_distance.size()) {
        throw std::invalid_argument("lof_score: test row length mismatch");
    }
    std::vector<double> scratch;
    const Neighborhood nb =
        neighborhood_of(test_dists, test_dists.size(), ref.k, scratch);
    const double own_lrd = lrd_of(nb, test_dists, ref.k_distance);
    double ratio_sum = 0.0;
    for (std::uint32_t j : nb.members) ratio_sum += ref.lrd[j] / own_lrd;
    return ratio_sum / static_cast<double>(nb.members.size());
}

double lof_score(std::span<const double> train_matrix, std::size_t n,
                 std::span<const double> test_dists, int k) {
    return lof_score(lof_reference(train_matrix, n, k), test_dists);
}

}  // namespace pda
