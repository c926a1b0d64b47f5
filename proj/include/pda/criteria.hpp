#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pda {

// --- Categorical data -------------------------------------------------------

// Per-group, per-attribute alphabet sizes shared by a dataset.
struct CategoricalSchema {
    std::vector<std::vector<int>> cardinalities;  // [group][attribute]

    std::size_t groups() const { return cardinalities.size(); }
};

// One sample: the attribute values for every group.
struct CategoricalSample {
    std::vector<std::vector<int>> groups;  // [group][attribute], 0 <= v < n_ij
};

struct CategoricalDataset {
    CategoricalSchema schema;
    std::vector<CategoricalSample> samples;
    std::vector<std::uint8_t> labels;  // empty, or one per sample (1 = anomalous)

    std::size_t size() const { return samples.size(); }
};

// Eskin dissimilarity over one attribute group: 0 per matching attribute,
// 2/(n^2 + 2) per mismatch for alphabet size n, summed over the group.
double eskin_dissimilarity(std::span<const int> a, std::span<const int> b,
                           std::span<const int> cardinalities);

void validate_dataset(const CategoricalDataset& data);

// --- Trajectories ------------------------------------------------------------

struct TrajectoryPoint {
    double x = 0.0;
    double y = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;  // length p >= 2 for speed criteria

    std::size_t size() const { return points.size(); }
};

// Instantaneous speeds by finite differencing (p - 1 values). Throws when the
// trajectory has fewer than two points.
std::vector<double> trajectory_speeds(const Trajectory& t);

struct SpeedHistogram {
    std::vector<double> bin_edges;  // B + 1 edges shared across a dataset
    std::vector<double> mass;       // B strictly positive masses summing to 1
};

inline constexpr int kDefaultSpeedBins = 20;
inline constexpr double kHistogramSmoothing = 1e-6;

// Shared bin edges spanning [0, max training speed].
std::vector<double> shared_speed_edges(std::span<const Trajectory> trajectories,
                                       int bins = kDefaultSpeedBins);

// Normalized speed histogram with additive smoothing; speeds beyond the last
// edge land in the last bin so test trajectories stay comparable.
SpeedHistogram speed_histogram(const Trajectory& t, std::span<const double> edges,
                               double smoothing = kHistogramSmoothing);

// KL(p||q) + KL(q||p) in nats. Requires identical edges and positive masses.
double symmetrized_kl(const SpeedHistogram& p, const SpeedHistogram& q);

// Classic dynamic time warping with steps (i-1,j), (i,j-1), (i-1,j-1) and
// Euclidean point distance as the local cost.
double dtw_dissimilarity(const Trajectory& s, const Trajectory& t);

double euclidean_distance(const TrajectoryPoint& a, const TrajectoryPoint& b);

// --- Pairwise stacks ----------------------------------------------------------

// K symmetric N x N zero-diagonal matrices of pairwise dissimilarities.
class DissimilarityStack {
public:
    DissimilarityStack() = default;
    DissimilarityStack(std::size_t n, std::size_t criteria);

    // Validates symmetry, zero diagonal, and nonnegative finite entries.
    static DissimilarityStack from_matrices(std::vector<std::vector<double>> matrices,
                                            std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t criteria() const { return matrices_.size(); }

    double at(std::size_t criterion, std::size_t i, std::size_t j) const {
        return matrices_[criterion][i * n_ + j];
    }
    void set(std::size_t criterion, std::size_t i, std::size_t j, double value);
    std::span<const double> matrix(std::size_t criterion) const { return matrices_[criterion]; }

    // Entrywise rescaling of one criterion by c > 0.
    void scale_criterion(std::size_t criterion, double factor);

private:
    std::size_t n_ = 0;
    std::vector<std::vector<double>> matrices_;
};

using PairwiseCriterion = std::function<double(std::size_t, std::size_t)>;

// Evaluate each criterion on all pairs i < j. A criterion failure is reported
// with the criterion index and the pair it failed on.
DissimilarityStack pairwise_stack(std::size_t n,
                                  std::span<const PairwiseCriterion> criteria,
                                  unsigned threads = 1);

// Typed builders used by the experiment pipelines. Test dissimilarities come
// back as K rows of length N (test sample against every training sample).
DissimilarityStack categorical_stack(const CategoricalDataset& train,
                                     unsigned threads = 1);
std::vector<std::vector<double>> categorical_test_dissims(const CategoricalDataset& train,
                                                          const CategoricalSample& test);

inline constexpr const char* kSpeedCriterionName = "speed_kl";
inline constexpr const char* kShapeCriterionName = "shape_dtw";

struct TrajectoryCriteria {
    std::vector<double> edges;
    std::vector<SpeedHistogram> histograms;  // one per training trajectory
};

TrajectoryCriteria trajectory_criteria(std::span<const Trajectory> train,
                                       int bins = kDefaultSpeedBins);
DissimilarityStack trajectory_stack(std::span<const Trajectory> train,
                                    const TrajectoryCriteria& crit, unsigned threads = 1);
std::vector<std::vector<double>> trajectory_test_dissims(std::span<const Trajectory> train,
                                                         const TrajectoryCriteria& crit,
                                                         const Trajectory& test);

// Single-criterion Euclidean stack over d-dimensional points (n x d row-major).
DissimilarityStack euclidean_stack(std::span<const double> points, std::size_t n,
                                   std::size_t dims);

}  // namespace pda
