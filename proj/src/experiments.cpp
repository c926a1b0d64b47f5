#include "pda/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pda/baselines.hpp"
#include "pda/criteria.hpp"
#include "pda/parallel.hpp"
#include "pda/rng.hpp"
#include "pda/synthgen.hpp"

namespace pda {

namespace {

AucStat stat_over_runs(std::vector<double> values) { return aggregate_aucs(values); }

// Scores for the scalarized baselines under one weight vector; raw per-sample
// scores are stashed in *raw when requested.
std::map<std::string, double> baseline_aucs(
    const std::vector<std::string>& methods, const DissimilarityStack& stack,
    const std::vector<std::vector<std::vector<double>>>& test_rows,
    const std::vector<std::uint8_t>& labels, std::span<const double> weight, int k,
    std::map<std::string, std::vector<double>>* raw = nullptr) {
    const std::size_t n = stack.size();
    const auto matrix = scalarize_matrix(stack, weight);

    const bool want_klpe =
        std::find(methods.begin(), methods.end(), "klpe") != methods.end();
    const bool want_lof = std::find(methods.begin(), methods.end(), "lof") != methods.end();
    KlpeReference klpe_ref;
    LofReference lof_ref;
    if (want_klpe) klpe_ref = klpe_reference(matrix, n, k);
    if (want_lof) lof_ref = lof_reference(matrix, n, k);

    std::map<std::string, std::vector<double>> scores;
    for (const auto& m : methods) scores[m] = {};
    for (const auto& rows : test_rows) {
        const auto dists = scalarize_rows(rows, weight);
        for (const auto& m : methods) {
            double s = 0.0;
            if (m == "knn") {
                s = knn_score(dists, k);
            } else if (m == "knn_sum") {
                s = knn_sum_score(dists, k);
            } else if (m == "klpe") {
                s = klpe_score(klpe_ref, dists);
            } else if (m == "lof") {
                s = lof_score(lof_ref, dists);
            } else {
                throw std::invalid_argument("unknown baseline method: " + m);
            }
            scores[m].push_back(s);
        }
    }
    std::map<std::string, double> out;
    for (const auto& m : methods) out[m] = auc(scores[m], labels);
    if (raw) *raw = std::move(scores);
    return out;
}

}  // namespace

AucStat CategoricalExperimentResult::pda_stat() const {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.pda_auc);
    return stat_over_runs(std::move(values));
}

AucStat CategoricalExperimentResult::method_median_stat(const std::string& method) const {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.baselines.at(method).median_auc);
    return stat_over_runs(std::move(values));
}

AucStat CategoricalExperimentResult::method_best_stat(const std::string& method) const {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.baselines.at(method).best_auc);
    return stat_over_runs(std::move(values));
}

AucStat CategoricalExperimentResult::method_mean_stat(const std::string& method) const {
    std::vector<double> values;
    for (const auto& r : runs) {
        const auto& profile = r.profiles.at(method);
        values.push_back(std::accumulate(profile.begin(), profile.end(), 0.0) /
                         static_cast<double>(profile.size()));
    }
    return stat_over_runs(std::move(values));
}

int CategoricalExperimentResult::wins_over_median(const std::string& method) const {
    int wins = 0;
    for (const auto& r : runs) {
        if (r.pda_auc > r.baselines.at(method).median_auc) ++wins;
    }
    return wins;
}

CategoricalExperimentResult run_categorical_experiment(
    const CategoricalExperimentConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("categorical experiment: runs >= 1");
    CategoricalExperimentResult result;
    result.runs.resize(cfg.runs);

    for (int run = 0; run < cfg.runs; ++run) {
        CategoricalConfig gen;
        gen.groups = cfg.criteria;
        gen.n_train = cfg.n_train;
        gen.n_test = cfg.n_test;
        gen.seed = derive_seed(cfg.seed, 1000 + run);
        const auto sim = gen_categorical_dataset(gen);

        const auto stack = categorical_stack(sim.train, cfg.threads);
        auto model = train(DissimilarityStack(stack), cfg.sorter);

        std::vector<std::vector<std::vector<double>>> test_rows(sim.test.size());
        for (std::size_t t = 0; t < sim.test.size(); ++t) {
            test_rows[t] = categorical_test_dissims(sim.train, sim.test.samples[t]);
        }

        // PDA scores, parallel over test samples.
        std::vector<double> pda_scores(sim.test.size());
        parallel_for(sim.test.size(), cfg.threads, [&](std::size_t t) {
            pda_scores[t] = score(model, test_rows[t], cfg.depth_mode).value;
        });
        CategoricalRun& out = result.runs[run];
        out.pda_auc = auc(pda_scores, sim.test.labels);
        out.k = model.neighbor_counts;
        out.fronts = model.front_count();

        // Scalarized baselines over sampled weights, parallel over weights.
        const bool capture = cfg.capture_run0_scores && run == 0;
        const auto weights = sample_simplex_weights(
            cfg.criteria, cfg.weights, derive_seed(cfg.seed, 2000 + run));
        std::vector<std::map<std::string, double>> per_weight(weights.size());
        std::vector<std::map<std::string, std::vector<double>>> raw(
            capture ? weights.size() : 0);
        parallel_for(weights.size(), cfg.threads, [&](std::size_t w) {
            per_weight[w] = baseline_aucs(cfg.methods, stack, test_rows, sim.test.labels,
                                          weights[w], cfg.baseline_k,
                                          capture ? &raw[w] : nullptr);
        });
        if (capture) {
            result.run0.labels = sim.test.labels;
            result.run0.pda = pda_scores;
            for (const auto& m : cfg.methods) {
                auto& slot = result.run0.baselines[m];
                slot.reserve(weights.size());
                for (auto& r : raw) slot.push_back(std::move(r.at(m)));
            }
        }
        for (const auto& m : cfg.methods) {
            std::vector<double> aucs;
            aucs.reserve(weights.size());
            for (const auto& pw : per_weight) aucs.push_back(pw.at(m));
            auto profile = weight_profile(std::move(aucs));
            out.baselines[m] = {profile.median, profile.best};
            out.profiles[m] = std::move(profile.sorted_aucs);
        }
    }
    return result;
}

AucStat TrajectoryExperimentResult::pda_stat() const {
    std::vector<double> values;
    for (const auto& r : runs) values.push_back(r.pda_auc);
    return stat_over_runs(std::move(values));
}

int TrajectoryExperimentResult::wins_over_median_all_methods() const {
    int wins = 0;
    for (const auto& r : runs) {
        bool beats_all = true;
        for (const auto& [method, summary] : r.baselines) {
            if (r.pda_auc < summary.median_auc) beats_all = false;
        }
        if (beats_all) ++wins;
    }
    return wins;
}

std::vector<double> TrajectoryExperimentResult::mean_grid() const {
    if (runs.empty() || runs.front().k_grid_auc.empty()) return {};
    std::vector<double> mean(runs.front().k_grid_auc.size(), 0.0);
    for (const auto& r : runs) {
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += r.k_grid_auc[i];
    }
    for (auto& v : mean) v /= static_cast<double>(runs.size());
    return mean;
}

double TrajectoryExperimentResult::best_grid_auc() const {
    const auto mean = mean_grid();
    if (mean.empty()) return 0.0;
    return *std::max_element(mean.begin(), mean.end());
}

TrajectoryExperimentResult run_trajectory_experiment(
    const TrajectoryExperimentConfig& cfg) {
    if (cfg.runs < 1) throw std::invalid_argument("trajectory experiment: runs >= 1");
    TrajectoryExperimentResult result;
    result.runs.resize(cfg.runs);
    result.k_grid_min = cfg.k_grid_min;
    result.k_grid_max = cfg.k_grid_max;

    for (int run = 0; run < cfg.runs; ++run) {
        const auto train_data = gen_synthetic_trajectories(
            cfg.n_train, 0, derive_seed(cfg.seed, 3000 + run));
        const auto test_data = gen_synthetic_trajectories(
            cfg.n_test_nominal, cfg.n_test_anomalous, derive_seed(cfg.seed, 4000 + run));

        const auto crit = trajectory_criteria(train_data.trajectories, cfg.bins);
        const auto stack =
            trajectory_stack(train_data.trajectories, crit, cfg.threads);
        auto model = train(DissimilarityStack(stack), cfg.sorter);

        const std::size_t tests = test_data.trajectories.size();
        std::vector<std::vector<std::vector<double>>> test_rows(tests);
        parallel_for(tests, cfg.threads, [&](std::size_t t) {
            test_rows[t] = trajectory_test_dissims(train_data.trajectories, crit,
                                                   test_data.trajectories[t]);
        });

        TrajectoryRun& out = result.runs[run];
        out.k = model.neighbor_counts;

        // Depths per (test sample, training neighbor) pair are shared by every
        // k choice; compute neighbor orders and depth caches once.
        const std::size_t n = model.train_size();
        std::vector<std::array<std::vector<std::uint32_t>, 2>> orders(tests);
        std::vector<std::vector<double>> depth_cache(tests);
        parallel_for(tests, cfg.threads, [&](std::size_t t) {
            orders[t][0] = neighbor_order(test_rows[t][0]);
            orders[t][1] = neighbor_order(test_rows[t][1]);
            depth_cache[t].assign(n, -1.0);
        });

        auto depth_of_neighbor = [&](std::size_t t, std::uint32_t neighbor) {
            double& slot = depth_cache[t][neighbor];
            if (slot < 0.0) {
                const std::vector<double> values = {test_rows[t][0][neighbor],
                                                    test_rows[t][1][neighbor]};
                slot = static_cast<double>(
                    model.ledger.pareto_depth(values, cfg.depth_mode));
            }
            return slot;
        };
        auto score_with_k = [&](std::size_t t, int k1, int k2) {
            double total = 0.0;
            for (int r = 0; r < k1; ++r) total += depth_of_neighbor(t, orders[t][0][r]);
            for (int r = 0; r < k2; ++r) total += depth_of_neighbor(t, orders[t][1][r]);
            return total / static_cast<double>(k1 + k2);
        };

        std::vector<double> pda_scores(tests);
        parallel_for(tests, cfg.threads, [&](std::size_t t) {
            pda_scores[t] = score_with_k(t, model.neighbor_counts[0],
                                         model.neighbor_counts[1]);
        });
        out.pda_auc = auc(pda_scores, test_data.labels);

        if (cfg.sweep_k_grid) {
            const int span = cfg.k_grid_max - cfg.k_grid_min + 1;
            out.k_grid_auc.resize(static_cast<std::size_t>(span) * span);
            std::vector<double> grid_scores(tests);
            for (int k1 = cfg.k_grid_min; k1 <= cfg.k_grid_max; ++k1) {
                for (int k2 = cfg.k_grid_min; k2 <= cfg.k_grid_max; ++k2) {
                    parallel_for(tests, cfg.threads, [&](std::size_t t) {
                        grid_scores[t] = score_with_k(t, k1, k2);
                    });
                    out.k_grid_auc[static_cast<std::size_t>(k1 - cfg.k_grid_min) * span +
                                   (k2 - cfg.k_grid_min)] =
                        auc(grid_scores, test_data.labels);
                }
            }
        }

        // Scalarized baselines over the uniform 2D weight grid.
        const auto weights = grid_weights_2d(cfg.weight_grid);
        std::vector<std::map<std::string, double>> per_weight(weights.size());
        parallel_for(weights.size(), cfg.threads, [&](std::size_t w) {
            per_weight[w] = baseline_aucs(kBaselineMethods, stack, test_rows,
                                          test_data.labels, weights[w], cfg.baseline_k);
        });
        for (const auto& m : kBaselineMethods) {
            std::vector<double> aucs;
            aucs.reserve(weights.size());
            for (const auto& pw : per_weight) aucs.push_back(pw.at(m));
            const auto profile = weight_profile(std::move(aucs));
            out.baselines[m] = {profile.median, profile.best};
        }
    }
    return result;
}

namespace {

double time_train_once(int n, int criteria, Sorter sorter, std::uint64_t seed) {
    const auto pts = gen_uniform_points(static_cast<std::size_t>(n),
                                        static_cast<std::size_t>(criteria), seed);
    const auto started = std::chrono::steady_clock::now();
    DissimilarityStack stack(n, criteria);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int l = 0; l < criteria; ++l) {
                stack.set(l, i, j,
                          std::abs(pts[static_cast<std::size_t>(i) * criteria + l] -
                                   pts[static_cast<std::size_t>(j) * criteria + l]));
            }
        }
    }
    auto model = train(std::move(stack), sorter);
    const auto elapsed = std::chrono::steady_clock::now() - started;
    (void)model;
    return std::chrono::duration<double>(elapsed).count();
}

double median3(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

BenchResult run_bench(const BenchConfig& cfg) {
    BenchResult result;
    if (cfg.repetitions < 1) throw std::invalid_argument("bench: repetitions >= 1");

    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
        std::vector<double> times;
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            times.push_back(time_train_once(cfg.n_grid[g], 2, cfg.sorter,
                                            derive_seed(cfg.seed, g * 100 + rep)));
        }
        result.by_n.push_back({static_cast<double>(cfg.n_grid[g]), median3(times), 0.0});
    }
    if (!result.by_n.empty()) {
        const double base = result.by_n.front().median_seconds;
        for (auto& row : result.by_n) row.normalized = row.median_seconds / base;
        if (result.by_n.size() >= 2) {
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            const double count = static_cast<double>(result.by_n.size());
            for (const auto& row : result.by_n) {
                const double x = std::log(row.x);
                const double y = std::log(row.median_seconds);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            result.loglog_slope_n = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        }
    }

    for (std::size_t g = 0; g < cfg.k_grid.size(); ++g) {
        std::vector<double> times;
        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            times.push_back(time_train_once(cfg.n_for_k, cfg.k_grid[g], cfg.sorter,
                                            derive_seed(cfg.seed, 50000 + g * 100 + rep)));
        }
        result.by_k.push_back({static_cast<double>(cfg.k_grid[g]), median3(times), 0.0});
    }
    if (!result.by_k.empty()) {
        const double base = result.by_k.front().median_seconds;
        for (auto& row : result.by_k) row.normalized = row.median_seconds / base;
    }
    return result;
}

}  // namespace pda
