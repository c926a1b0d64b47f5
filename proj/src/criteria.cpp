#include "pda/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "pda/parallel.hpp"

namespace pda {

double eskin_dissimilarity(std::span<const int> a, std::span<const int> b,
                           std::span<const int> cardinalities) {
    if (a.size() != b.size() || a.size() != cardinalities.size()) {
        throw std::invalid_argument("eskin_dissimilarity: attribute/cardinality mismatch");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const int n = cardinalities[j];
        if (n < 2) throw std::invalid_argument("eskin_dissimilarity: alphabet size < 2");
        if (a[j] < 0 || a[j] >= n || b[j] < 0 || b[j] >= n) {
            throw std::invalid_argument("eskin_dissimilarity: value outside alphabet");
        }
        if (a[j] != b[j]) total += 2.0 / (static_cast<double>(n) * n + 2.0);
    }
    return total;
}

void validate_dataset(const CategoricalDataset& data) {
    const auto& schema = data.schema;
    if (schema.groups() == 0) throw std::invalid_argument("categorical schema has no groups");
    if (!data.labels.empty() && data.labels.size() != data.samples.size()) {
        throw std::invalid_argument("label count does not match sample count");
    }
    for (const auto& sample : data.samples) {
        if (sample.groups.size() != schema.groups()) {
            throw std::invalid_argument("sample group count does not match schema");
        }
        for (std::size_t g = 0; g < sample.groups.size(); ++g) {
            const auto& values = sample.groups[g];
            const auto& cards = schema.cardinalities[g];
            if (values.size() != cards.size()) {
                throw std::invalid_argument("sample attribute count does not match schema");
            }
            for (std::size_t j = 0; j < values.size(); ++j) {
                if (values[j] < 0 || values[j] >= cards[j]) {
                    throw std::invalid_argument("attribute value outside its alphabet");
                }
            }
        }
    }
}

std::vector<double> trajectory_speeds(const Trajectory& t) {
    if (t.size() < 2) {
        throw std::invalid_argument("trajectory needs at least two points");
    }
    std::vector<double> speeds;
    speeds.reserve(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        speeds.push_back(euclidean_distance(t.points[i - 1], t.points[i]));
    }
    return speeds;
}

std::vector<double> shared_speed_edges(std::span<const Trajectory> trajectories, int bins) {
    if (bins < 1) throw std::invalid_argument("shared_speed_edges: bins must be >= 1");
    double max_speed = 0.0;
    for (const auto& t : trajectories) {
        for (double s : trajectory_speeds(t)) max_speed = std::max(max_speed, s);
    }
    if (max_speed <= 0.0) max_speed = 1.0;  // all-stationary corpus
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i) {
        edges[i] = max_speed * static_cast<double>(i) / bins;
    }
    return edges;
}

SpeedHistogram speed_histogram(const Trajectory& t, std::span<const double> edges,
                               double smoothing) {
    if (edges.size() < 2) throw std::invalid_argument("speed_histogram: need >= 2 edges");
    const std::size_t bins = edges.size() - 1;
    const auto speeds = trajectory_speeds(t);

    std::vector<double> mass(bins, 0.0);
    for (double s : speeds) {
        std::size_t idx;
        if (s >= edges[bins]) {
            idx = bins - 1;  // clamp: test speeds may exceed the training range
        } else {
            idx = static_cast<std::size_t>(
                      std::upper_bound(edges.begin(), edges.end(), s) - edges.begin()) -
                  1;
            if (idx >= bins) idx = bins - 1;
        }
        mass[idx] += 1.0;
    }
    const double count = static_cast<double>(speeds.size());
    double total = 0.0;
    for (auto& m : mass) {
        m = m / count + smoothing;
        total += m;
    }
    for (auto& m : mass) m /= total;

    SpeedHistogram hist;
    hist.bin_edges.assign(edges.begin(), edges.end());
    hist.mass = std::move(mass);
    return hist;
}

double symmetrized_kl(const SpeedHistogram& p, const SpeedHistogram& q) {
    if (p.bin_edges != q.bin_edges) {
        throw std::invalid_argument("symmetrized_kl: histograms use different edges");
    }
    if (p.mass.size() != q.mass.size()) {
        throw std::invalid_argument("symmetrized_kl: bin count mismatch");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < p.mass.size(); ++i) {
        const double pi = p.mass[i], qi = q.mass[i];
        if (pi <= 0.0 || qi <= 0.0) {
            throw std::invalid_argument("symmetrized_kl: masses must be positive");
        }
        // (pi - qi)(log pi - log qi): exactly symmetric under argument swap.
        total += (pi - qi) * (std::log(pi) - std::log(qi));
    }
    return total;
}

double euclidean_distance(const TrajectoryPoint& a, const TrajectoryPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

double dtw_dissimilarity(const Trajectory& s, const Trajectory& t) {
    const std::size_t ns = s.size(), nt = t.size();
    if (ns == 0 || nt == 0) throw std::invalid_argument("dtw_dissimilarity: empty trajectory");

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(nt + 1, inf), curr(nt + 1, inf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= ns; ++i) {
        curr[0] = inf;
        for (std::size_t j = 1; j <= nt; ++j) {
            const double cost = euclidean_distance(s.points[i - 1], t.points[j - 1]);
            curr[j] = cost + std::min({prev[j], curr[j - 1], prev[j - 1]});
        }
        std::swap(prev, curr);
    }
    return prev[nt];
}

DissimilarityStack::DissimilarityStack(std::size_t n, std::size_t criteria) : n_(n) {
    matrices_.assign(criteria, std::vector<double>(n * n, 0.0));
}

DissimilarityStack DissimilarityStack::from_matrices(
    std::vector<std::vector<double>> matrices, std::size_t n) {
    if (matrices.empty()) throw std::invalid_argument("stack needs at least one criterion");
    DissimilarityStack stack;
    stack.n_ = n;
    for (std::size_t l = 0; l < matrices.size(); ++l) {
        const auto& m = matrices[l];
        if (m.size() != n * n) {
            throw std::invalid_argument("criterion " + std::to_string(l) +
                                        ": matrix is not N x N");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (m[i * n + i] != 0.0) {
                throw std::invalid_argument("criterion " + std::to_string(l) +
                                            ": nonzero diagonal");
            }
            for (std::size_t j = 0; j < n; ++j) {
                const double v = m[i * n + j];
                if (!std::isfinite(v) || v < 0.0) {
                    throw std::invalid_argument("criterion " + std::to_string(l) +
                                                ": invalid entry");
                }
                if (m[j * n + i] != v) {
                    throw std::invalid_argument("criterion " + std::to_string(l) +
                                                ": matrix is not symmetric");
                }
            }
        }
    }
    stack.matrices_ = std::move(matrices);
    return stack;
}

void DissimilarityStack::set(std::size_t criterion, std::size_t i, std::size_t j,
                             double value) {
    matrices_[criterion][i * n_ + j] = value;
    matrices_[criterion][j * n_ + i] = value;
}

void DissimilarityStack::scale_criterion(std::size_t criterion, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
    for (auto& v : matrices_[criterion]) v *= factor;
}

DissimilarityStack pairwise_stack(std::size_t n,
                                  std::span<const PairwiseCriterion> criteria,
                                  unsigned threads) {
    if (n < 2) throw std::invalid_argument("pairwise_stack: need at least two samples");
    if (criteria.empty()) throw std::invalid_argument("pairwise_stack: no criteria");

    DissimilarityStack stack(n, criteria.size());
    std::mutex err_mutex;
    std::string first_error;
    std::size_t first_error_rank = static_cast<std::size_t>(-1);

    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t l = 0; l < criteria.size(); ++l) {
                try {
                    const double v = criteria[l](i, j);
                    if (!std::isfinite(v) || v < 0.0) {
                        throw std::invalid_argument("produced a non-finite or negative value");
                    }
                    stack.set(l, i, j, v);
                } catch (const std::exception& e) {
                    const std::size_t rank = (l * n + i) * n + j;
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (rank < first_error_rank) {
                        first_error_rank = rank;
                        first_error = "criterion " + std::to_string(l) + " failed on pair (" +
                                      std::to_string(i) + ", " + std::to_string(j) +
                                      "): " + e.what();
                    }
                }
            }
        }
    });
    if (first_error_rank != static_cast<std::size_t>(-1)) {
        throw std::runtime_error(first_error);
    }
    return stack;
}

DissimilarityStack categorical_stack(const CategoricalDataset& train, unsigned threads) {
    validate_dataset(train);
    const std::size_t k = train.schema.groups();
    std::vector<PairwiseCriterion> criteria;
    criteria.reserve(k);
    for (std::size_t g = 0; g < k; ++g) {
        criteria.push_back([&train, g](std::size_t i, std::size_t j) {
            return eskin_dissimilarity(train.samples[i].groups[g],
                                       train.samples[j].groups[g],
                                       train.schema.cardinalities[g]);
        });
    }
    return pairwise_stack(train.size(), criteria, threads);
}

std::vector<std::vector<double>> categorical_test_dissims(const CategoricalDataset& train,
                                                          const CategoricalSample& test) {
    const std::size_t k = train.schema.groups();
    std::vector<std::vector<double>> rows(k, std::vector<double>(train.size()));
    for (std::size_t g = 0; g < k; ++g) {
        for (std::size_t i = 0; i < train.size(); ++i) {
            rows[g][i] = eskin_dissimilarity(test.groups[g], train.samples[i].groups[g],
                                             train.schema.cardinalities[g]);
        }
    }
    return rows;
}

TrajectoryCriteria trajectory_criteria(std::span<const Trajectory> train, int bins) {
    TrajectoryCriteria crit;
    crit.edges = shared_speed_edges(train, bins);
    crit.histograms.reserve(train.size());
    for (const auto& t : train) crit.histograms.push_back(speed_histogram(t, crit.edges));
    return crit;
}

DissimilarityStack trajectory_stack(std::span<const Trajectory> train,
                                    const TrajectoryCriteria& crit, unsigned threads) {
    if (crit.histograms.size() != train.size()) {
        throw std::invalid_argument("trajectory_stack: histogram count mismatch");
    }
    std::vector<PairwiseCriterion> criteria;
    criteria.push_back([&crit](std::size_t i, std::size_t j) {
        return symmetrized_kl(crit.histograms[i], crit.histograms[j]);
    });
    criteria.push_back([train](std::size_t i, std::size_t j) {
        return dtw_dissimilarity(train[i], train[j]);
    });
    return pairwise_stack(train.size(), criteria, threads);
}

std::vector<std::vector<double>> trajectory_test_dissims(std::span<const Trajectory> train,
                                                         const TrajectoryCriteria& crit,
                                                         const Trajectory& test) {
    const SpeedHistogram test_hist = speed_histogram(test, crit.edges);
    std::vector<std::vector<double>> rows(2, std::vector<double>(train.size()));
    for (std::size_t i = 0; i < train.size(); ++i) {
        rows[0][i] = symmetrized_kl(test_hist, crit.histograms[i]);
        rows[1][i] = dtw_dissimilarity(test, train[i]);
    }
    return rows;
}

DissimilarityStack euclidean_stack(std::span<const double> points, std::size_t n,
                                   std::size_t dims) {
    if (points.size() != n * dims) {
        throw std::invalid_argument("euclidean_stack: points size mismatch");
    }
    std::vector<PairwiseCriterion> criteria;
    criteria.push_back([points, dims](std::size_t i, std::size_t j) {
        double sum = 0.0;
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = points[i * dims + d] - points[j * dims + d];
            sum += diff * diff;
        }
        return std::sqrt(sum);
    });
    return pairwise_stack(n, criteria, 1);
}

}  // namespace pda
