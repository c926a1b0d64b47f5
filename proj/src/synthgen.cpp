#include "pda/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "pda/rng.hpp"

namespace pda {

std::vector<double> group_probabilities(int groups) {
    if (groups < 1) throw std::invalid_argument("group_probabilities: K must be >= 1");
    std::vector<double> p(groups);
    const double denom = static_cast<double>(groups) * (groups + 1);
    for (int i = 0; i < groups; ++i) p[i] = static_cast<double>(i + 1) / denom;
    return p;
}

namespace {

std::vector<double> dirichlet(std::mt19937_64& rng, std::span<const double> alpha) {
    std::vector<double> draw(alpha.size());
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        std::gamma_distribution<double> gamma(alpha[i], 1.0);
        draw[i] = gamma(rng);
        total += draw[i];
    }
    for (auto& v : draw) v /= total;
    return draw;
}

int sample_categorical(std::mt19937_64& rng, std::span<const double> probs) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

using AttributeParams = std::vector<std::vector<std::vector<double>>>;  // [g][attr][value]

CategoricalSample draw_sample(std::mt19937_64& rng, const AttributeParams& params) {
    CategoricalSample sample;
    sample.groups.resize(params.size());
    for (std::size_t g = 0; g < params.size(); ++g) {
        sample.groups[g].reserve(params[g].size());
        for (const auto& probs : params[g]) {
            sample.groups[g].push_back(sample_categorical(rng, probs));
        }
    }
    return sample;
}

}  // namespace

CategoricalSimulation gen_categorical_dataset(const CategoricalConfig& cfg) {
    if (cfg.groups < 1 || cfg.attrs_per_group < 1) {
        throw std::invalid_argument("gen_categorical_dataset: bad group configuration");
    }
    if (cfg.min_cardinality < 2 || cfg.max_cardinality < cfg.min_cardinality) {
        throw std::invalid_argument("gen_categorical_dataset: bad cardinality range");
    }
    std::mt19937_64 rng = make_rng(cfg.seed);

    CategoricalSchema schema;
    schema.cardinalities.resize(cfg.groups);
    std::uniform_int_distribution<int> card_dist(cfg.min_cardinality, cfg.max_cardinality);
    for (auto& group : schema.cardinalities) {
        group.resize(cfg.attrs_per_group);
        for (auto& c : group) c = card_dist(rng);
    }

    // Nominal per-attribute categorical parameters, drawn once per run.
    AttributeParams nominal(cfg.groups);
    for (int g = 0; g < cfg.groups; ++g) {
        nominal[g].resize(cfg.attrs_per_group);
        for (int a = 0; a < cfg.attrs_per_group; ++a) {
            std::vector<double> alpha(schema.cardinalities[g][a], 1.0);
            alpha[0] = cfg.nominal_alpha1;
            nominal[g][a] = dirichlet(rng, alpha);
        }
    }

    CategoricalSimulation sim;
    sim.train.schema = schema;
    sim.test.schema = schema;
    sim.train.samples.reserve(cfg.n_train);
    for (int i = 0; i < cfg.n_train; ++i) {
        sim.train.samples.push_back(draw_sample(rng, nominal));
    }

    const auto group_probs = group_probabilities(cfg.groups);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    sim.test.samples.reserve(cfg.n_test);
    sim.test.labels.reserve(cfg.n_test);
    for (int i = 0; i < cfg.n_test; ++i) {
        const bool anomalous = unif(rng) < cfg.anomaly_rate;
        if (!anomalous) {
            sim.test.samples.push_back(draw_sample(rng, nominal));
            sim.test.labels.push_back(0);
            continue;
        }
        // Normalize the group weights to 1 to pick the corrupted group.
        std::vector<double> pick(group_probs);
        double total = 0.0;
        for (double p : pick) total += p;
        for (auto& p : pick) p /= total;
        const int g = sample_categorical(rng, pick);

        AttributeParams params = nominal;
        for (int a = 0; a < cfg.attrs_per_group; ++a) {
            const std::vector<double> alpha(schema.cardinalities[g][a], 1.0);
            params[g][a] = dirichlet(rng, alpha);
        }
        sim.test.samples.push_back(draw_sample(rng, params));
        sim.test.labels.push_back(1);
    }
    return sim;
}

std::vector<double> gen_uniform_points(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> points(n * d);
    for (auto& v : points) v = unif(rng);
    return points;
}

std::vector<double> gen_linear_density_points(std::size_t n, std::size_t d,
                                              std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> points(n * d);
    std::vector<double> candidate(d);
    const double bound = 1.0 + static_cast<double>(d);  // max of 1 + sum x_i
    for (std::size_t i = 0; i < n; ++i) {
        for (;;) {
            double sum = 0.0;
            for (auto& v : candidate) {
                v = unif(rng);
                sum += v;
            }
            if (unif(rng) * bound <= 1.0 + sum) break;
        }
        std::copy(candidate.begin(), candidate.end(), points.begin() + i * d);
    }
    return points;
}

std::vector<double> points_to_dyads(std::span<const double> points, std::size_t n,
                                    std::size_t d) {
    if (n < 2) throw std::invalid_argument("points_to_dyads: need at least two points");
    if (points.size() != n * d) {
        throw std::invalid_argument("points_to_dyads: points size mismatch");
    }
    std::vector<double> dyads(n * (n - 1) / 2 * d);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++row) {
            for (std::size_t l = 0; l < d; ++l) {
                dyads[row * d + l] = std::abs(points[i * d + l] - points[j * d + l]);
            }
        }
    }
    return dyads;
}

namespace {

double truncated_positive_normal(std::mt19937_64& rng, double mean, double sigma) {
    std::normal_distribution<double> normal(mean, sigma);
    for (;;) {
        const double v = normal(rng);
        if (v > 0.0) return v;
    }
}

// Acklam's rational approximation of the standard normal quantile.
double normal_quantile(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    p = std::min(std::max(p, 1e-12), 1.0 - 1e-12);
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Walks enter at a scene edge aimed at a point near the middle, like
// pedestrians crossing a plaza; the shared structure keeps nominal shape
// dissimilarities informative.
Trajectory gen_trajectory(std::mt19937_64& rng, const TrajectoryGenConfig& cfg,
                          double speed_factor, bool zigzag) {
    std::uniform_int_distribution<int> length_dist(cfg.min_length, cfg.max_length);
    std::uniform_real_distribution<double> edge_dist(0.0, cfg.scene_size);
    std::uniform_int_distribution<int> side_dist(0, 3);
    std::normal_distribution<double> drift(0.0, cfg.heading_sigma);
    std::normal_distribution<double> jitter(0.0, cfg.position_noise);

    // A fast walker crosses the scene in proportionally fewer samples, so its
    // spatial span and summed-distance scale stay nominal and only the speed
    // profile shifts. Slow walkers keep a nominal sample count.
    int length = length_dist(rng);
    if (speed_factor > 1.0) {
        length = std::max(static_cast<int>(std::lround(length / speed_factor)), 5);
    }
    const int side = side_dist(rng);
    const double offset = edge_dist(rng);
    double x = side == 0 ? 0.0 : side == 1 ? cfg.scene_size : offset;
    double y = side <= 1 ? offset : side == 2 ? 0.0 : cfg.scene_size;

    // Each walker keeps a persistent pace ~ Normal(base_speed, speed_sigma),
    // realized as the normal quantile of the entry gate so that pace and path
    // geometry carry correlated information for nominal traffic.
    const double gate = (side + offset / cfg.scene_size) / 4.0;
    const double pace =
        std::max(cfg.base_speed + 0.6 * cfg.speed_sigma * normal_quantile(gate),
                 cfg.base_speed * 0.1);

    const double mid = cfg.scene_size / 2.0;
    std::uniform_real_distribution<double> target_dist(mid - cfg.scene_size / 15.0,
                                                       mid + cfg.scene_size / 15.0);
    const double base_heading = std::atan2(target_dist(rng) - y, target_dist(rng) - x);
    double heading = base_heading;

    Trajectory t;
    t.points.reserve(length);
    for (int step = 0; step < length; ++step) {
        t.points.push_back({x + jitter(rng), y + jitter(rng)});
        double h;
        if (zigzag) {
            h = base_heading + ((step / 3) % 2 == 0 ? 1.45 : -1.45) + drift(rng);
        } else {
            heading += drift(rng);
            h = heading;
        }
        const double speed =
            truncated_positive_normal(rng, pace, 0.8 * cfg.speed_sigma) * speed_factor;
        x += speed * std::cos(h);
        y += speed * std::sin(h);
    }
    return t;
}

}  // namespace

LabeledTrajectories gen_synthetic_trajectories(std::size_t n_nominal,
                                               std::size_t n_anomalous,
                                               std::uint64_t seed,
                                               const TrajectoryGenConfig& cfg) {
    std::mt19937_64 rng = make_rng(seed);
    LabeledTrajectories out;
    out.trajectories.reserve(n_nominal + n_anomalous);
    out.labels.reserve(n_nominal + n_anomalous);
    for (std::size_t i = 0; i < n_nominal; ++i) {
        out.trajectories.push_back(gen_trajectory(rng, cfg, 1.0, false));
        out.labels.push_back(0);
    }
    std::uniform_int_distribution<int> kind_dist(0, 2);
    for (std::size_t i = 0; i < n_anomalous; ++i) {
        const int kind = kind_dist(rng);
        const double factor = kind == 0 ? 3.0 : kind == 1 ? 0.25 : 1.0;
        out.trajectories.push_back(gen_trajectory(rng, cfg, factor, kind == 2));
        out.labels.push_back(1);
    }
    return out;
}

}  // namespace pda
