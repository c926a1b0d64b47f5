// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria can be filtered with --criteria 1,2,... for development.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pda/baselines.hpp"
#include "pda/criteria.hpp"
#include "pda/detector.hpp"
#include "pda/eval.hpp"
#include "pda/experiments.hpp"
#include "pda/gap_lab.hpp"
#include "pda/io.hpp"
#include "pda/nondominated_sort.hpp"
#include "pda/parallel.hpp"
#include "pda/rng.hpp"
#include "pda/synthgen.hpp"

using namespace pda;

namespace {

unsigned g_threads = default_threads();

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) { return io::format_double(v); }

// Definitional depth oracle: scan fronts in order, looking for a dominated
// member, using only the depth array and raw dominance.
std::uint32_t oracle_depth(const std::vector<double>& coords, std::size_t n,
                           std::size_t k, const std::vector<std::uint32_t>& depths,
                           const std::vector<double>& q) {
    std::uint32_t max_depth = 0;
    for (auto d : depths) max_depth = std::max(max_depth, d);
    for (std::uint32_t j = 1; j <= max_depth; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (depths[i] != j) continue;
            if (dominates_row(q.data(), coords.data() + i * k, k)) return j;
        }
    }
    return max_depth + 1;
}

// --- 1: categorical experiment ---------------------------------------------------

Outcome criterion1() {
    CategoricalExperimentConfig cfg;
    cfg.criteria = 6;
    cfg.n_train = 400;
    cfg.n_test = 400;
    cfg.weights = 600;
    cfg.runs = 20;
    cfg.seed = 20250801;
    cfg.threads = g_threads;
    const auto result = run_categorical_experiment(cfg);

    const auto stat = result.pda_stat();
    const bool band = stat.mean >= 0.835 && stat.mean <= 0.935;
    bool wins_ok = true;
    std::string wins;
    for (const auto& method : cfg.methods) {
        const int w = result.wins_over_median(method);
        wins += method + "=" + std::to_string(w) + "/20 ";
        if (w < 18) wins_ok = false;
    }
    Outcome out;
    out.pass = band && wins_ok;
    out.detail = "pda mean auc " + fmt(stat.mean) + " +/- " + fmt(stat.se) +
                 " (band [0.835, 0.935]); wins over median-weight auc: " + wins;
    return out;
}

// --- 2: K-sweep trend --------------------------------------------------------------

Outcome criterion2() {
    std::vector<double> ratios;
    std::string detail = "pda/best-lof ratio by K:";
    for (int criteria = 2; criteria <= 8; ++criteria) {
        CategoricalExperimentConfig cfg;
        cfg.criteria = criteria;
        cfg.n_train = 400;
        cfg.n_test = 400;
        cfg.weights = 100 * criteria;
        cfg.runs = 6;
        cfg.methods = {"lof"};
        cfg.seed = 20250802;
        cfg.threads = g_threads;
        const auto result = run_categorical_experiment(cfg);
        double ratio = 0.0;
        for (const auto& run : result.runs) {
            ratio += run.pda_auc / run.baselines.at("lof").best_auc;
        }
        ratio /= static_cast<double>(result.runs.size());
        ratios.push_back(ratio);
        detail += " K=" + std::to_string(criteria) + ":" + fmt(ratio);
    }
    bool pass = true;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const int criteria = static_cast<int>(i) + 2;
        if (criteria >= 5 && ratios[i] < 1.0) pass = false;
        if (i > 0 && ratios[i] < ratios[i - 1] - 0.03) pass = false;
    }
    return {pass, detail};
}

// --- 3: scalarization gap growth ----------------------------------------------------

Outcome criterion3() {
    GapGrowthConfig cfg;
    cfg.d = 2;
    cfg.n_grid = {10000, 31623, 100000, 316228, 1000000};
    cfg.realizations = 100;
    cfg.generator = GapGenerator::dyads;
    cfg.seed = 20250803;
    cfg.threads = g_threads;
    const auto result = run_gap_growth(cfg);

    const double alpha = result.alpha_no_intercept;
    const bool hard = alpha >= 0.167 && alpha <= 0.50;
    const bool soft = alpha >= 0.25 && alpha <= 0.40;
    Outcome out;
    out.pass = hard;
    out.detail = "fitted alpha " + fmt(alpha) + " (asymptotic band [0.167, 0.50]; soft [0.25, 0.40] " +
                 (soft ? "hit" : "missed") + "); with intercept " +
                 fmt(result.alpha_with_intercept) + " + " + fmt(result.intercept);
    return out;
}

// --- 4: dimension sweep --------------------------------------------------------------

Outcome criterion4() {
    GapDimsConfig cfg;
    cfg.dims = {2, 3, 4, 5};
    cfg.n_target = 100128;
    cfg.realizations = 200;
    cfg.generator = GapGenerator::dyads;
    cfg.seed = 20250804;
    cfg.threads = g_threads;
    const auto result = run_gap_dims(cfg);

    bool increasing = true, above = true;
    std::string detail = "mean (Kn-Ln)/c_nd:";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& row = result.rows[i];
        detail += " d=" + std::to_string(row.d) + ":" + fmt(row.mean_ratio) +
                  " (lb " + fmt(row.lower_bound) + ")";
        if (i > 0 && row.mean_ratio <= result.rows[i - 1].mean_ratio) increasing = false;
        if (row.mean_ratio < row.lower_bound - 0.05) above = false;
    }
    return {increasing && above, detail};
}

// --- 5: first-front size oracle --------------------------------------------------------

Outcome criterion5() {
    KnOracleConfig uniform;
    uniform.n = 1000;
    uniform.d = 2;
    uniform.realizations = 500;
    uniform.seed = 20250805;
    uniform.threads = g_threads;
    const auto u = run_kn_oracle(uniform);
    const double h1000 = harmonic_number(1000);
    const bool uniform_ok = std::abs(u.mean_kn - h1000) <= 3.0 * u.se &&
                            std::abs(u.expected_uniform - h1000) <= 1e-6;

    KnOracleConfig linear;
    linear.n = 100000;
    linear.d = 2;
    linear.realizations = 200;
    linear.linear_density = true;
    linear.seed = 20250806;
    linear.threads = g_threads;
    const auto l = run_kn_oracle(linear);
    const double ratio = l.mean_kn / l.c_nd_value;
    const bool linear_ok = ratio >= 0.8 && ratio <= 1.2;

    Outcome out;
    out.pass = uniform_ok && linear_ok;
    out.detail = "uniform n=1000: mean Kn " + fmt(u.mean_kn) + " vs H_1000 " + fmt(h1000) +
                 " (3se " + fmt(3.0 * u.se) + "); linear density n=1e5: Kn/c_nd " +
                 fmt(ratio) + " (band [0.8, 1.2])";
    return out;
}

// --- 6: sorting oracle equivalence ------------------------------------------------------

Outcome criterion6() {
    const int instances = 1000;
    std::vector<int> failures(instances, 0);
    parallel_for(instances, g_threads, [&](std::size_t i) {
        std::mt19937_64 rng(derive_seed(20250807, i));
        std::uniform_int_distribution<std::size_t> size_dist(2, 2000);
        std::uniform_int_distribution<std::size_t> k_dist(1, 6);
        const std::size_t n = size_dist(rng);
        const std::size_t k = k_dist(rng);
        const int quantize = i % 3 == 0 ? 6 : 0;  // force heavy ties on a third

        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> coords(n * k);
        for (std::size_t r = 0; r < n; ++r) {
            const bool duplicate = r > 0 && unif(rng) < 0.2;
            if (duplicate) {
                std::uniform_int_distribution<std::size_t> pick(0, r - 1);
                const std::size_t src = pick(rng);
                std::copy_n(coords.begin() + src * k, k, coords.begin() + r * k);
            } else {
                for (std::size_t c = 0; c < k; ++c) {
                    double v = unif(rng);
                    if (quantize) v = std::floor(v * quantize) / quantize;
                    coords[r * k + c] = v;
                }
            }
        }
        if (jensen_depths(coords, n, k) != deb_depths(coords, n, k)) failures[i] = 1;
    });
    const int failed = std::accumulate(failures.begin(), failures.end(), 0);
    return {failed == 0, std::to_string(instances - failed) + "/" +
                             std::to_string(instances) +
                             " random instances with identical depth assignments"};
}

// --- 7: depth query correctness -----------------------------------------------------------

Outcome criterion7() {
    std::size_t checked = 0, exact_bad = 0, accel_bad = 0;
    std::uint64_t fallbacks = 0;
    for (const std::size_t k : {2, 3, 5}) {
        std::mt19937_64 rng(derive_seed(20250808, k));
        const std::size_t n = 3000;
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> coords(n * k);
        for (auto& v : coords) {
            v = unif(rng);
            if (k != 2 && unif(rng) < 0.3) v = std::floor(v * 8) / 8;  // ties
        }
        const auto depths = jensen_depths(coords, n, k);
        const auto ledger =
            FrontLedger::from_depths(std::vector<double>(coords), k, depths);

        std::uniform_real_distribution<double> qdist(0.0, 1.3);
        const std::size_t queries = 10000 / 3 + 1;
        for (std::size_t rep = 0; rep < queries; ++rep) {
            std::vector<double> q(k);
            for (auto& v : q) v = qdist(rng);
            const auto expected = oracle_depth(coords, n, k, depths, q);
            if (ledger.pareto_depth(q, DepthMode::exact) != expected) ++exact_bad;
            if (ledger.pareto_depth(q, DepthMode::accelerated) != expected) ++accel_bad;
            ++checked;
        }
        fallbacks += ledger.accelerated_fallbacks();
    }
    Outcome out;
    out.pass = exact_bad == 0 && accel_bad == 0;
    out.detail = std::to_string(checked) + " queries; exact mismatches " +
                 std::to_string(exact_bad) + ", accelerated mismatches " +
                 std::to_string(accel_bad) + ", accelerated fallbacks " +
                 std::to_string(fallbacks);
    return out;
}

// --- 8: L_n method agreement -----------------------------------------------------------------

Outcome criterion8() {
    std::size_t disagreements = 0, flagged = 0, candidates = 0;
    std::mt19937_64 rng(20250809);
    for (int rep = 0; rep < 500; ++rep) {
        std::uniform_int_distribution<std::size_t> size_dist(50, 2000);
        const std::size_t n = size_dist(rng);
        const auto pts = gen_uniform_points(n, 2, rng());
        const auto front_ids = first_front(pts, n, 2);
        std::vector<double> front(front_ids.size() * 2);
        for (std::size_t f = 0; f < front_ids.size(); ++f) {
            front[2 * f] = pts[2 * front_ids[f]];
            front[2 * f + 1] = pts[2 * front_ids[f] + 1];
        }
        const auto status = scalarizable_subset_lp(front, front_ids.size(), 2);
        const auto chain = scalarizable_subset_chain2d(front, front_ids.size());
        for (std::size_t i = 0; i < front_ids.size(); ++i) {
            ++candidates;
            if (status[i] == Scalarizable::ambiguous) {
                ++flagged;
                continue;
            }
            if ((status[i] == Scalarizable::yes) != (chain[i] == 1)) ++disagreements;
        }
    }
    const double flag_rate = static_cast<double>(flagged) / static_cast<double>(candidates);
    Outcome out;
    out.pass = disagreements == 0 && flag_rate < 0.001;
    out.detail = std::to_string(candidates) + " candidates over 500 fronts; " +
                 std::to_string(disagreements) + " disagreements, " +
                 std::to_string(flagged) + " flagged (rate " + fmt(flag_rate) + ")";
    return out;
}

// --- 9: scale invariance ---------------------------------------------------------------------

Outcome criterion9() {
    const std::size_t n = 120;
    const auto pts = gen_uniform_points(n, 2, 20250810);
    auto base_stack = [&]() {
        DissimilarityStack stack(n, 2);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                stack.set(0, i, j, std::abs(pts[2 * i] - pts[2 * j]));
                stack.set(1, i, j, std::abs(pts[2 * i + 1] - pts[2 * j + 1]));
            }
        }
        return stack;
    };
    const auto model = train(base_stack(), Sorter::jensen);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(-0.2, 1.2);
    std::vector<std::vector<std::vector<double>>> tests(200);
    for (auto& rows : tests) {
        const double x = unif(rng), y = unif(rng);
        rows.assign(2, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            rows[0][i] = std::abs(x - pts[2 * i]);
            rows[1][i] = std::abs(y - pts[2 * i + 1]);
        }
    }

    bool identical = true;
    for (const std::size_t criterion : {0, 1}) {
        for (const double factor : {1e-3, 1e3}) {
            auto scaled = base_stack();
            scaled.scale_criterion(criterion, factor);
            const auto scaled_model = train(std::move(scaled), Sorter::jensen);
            if (scaled_model.ledger.depths() != model.ledger.depths()) identical = false;
            for (const auto& rows : tests) {
                auto scaled_rows = rows;
                for (auto& v : scaled_rows[criterion]) v *= factor;
                const auto a = score(model, rows);
                const auto b = score(scaled_model, scaled_rows);
                if (a.depths != b.depths || a.value != b.value) identical = false;
            }
        }
    }

    // Constructed witness: the same rescaling flips a scalarized kNN ranking.
    std::mt19937_64 wrng(3333);
    std::uniform_real_distribution<double> noise(0.0, 0.05);
    std::vector<std::vector<double>> rows_a(2, std::vector<double>(n));
    std::vector<std::vector<double>> rows_b(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rows_a[0][i] = 1.0 + noise(wrng);
        rows_a[1][i] = 100.0 + noise(wrng);
        rows_b[0][i] = 2.0 + noise(wrng);
        rows_b[1][i] = 50.0 + noise(wrng);
    }
    const std::vector<double> w = {0.5, 0.5};
    const double knn_a = knn_score(scalarize_rows(rows_a, w), 6);
    const double knn_b = knn_score(scalarize_rows(rows_b, w), 6);
    auto scaled_a = rows_a, scaled_b = rows_b;
    for (auto& v : scaled_a[0]) v *= 1e3;
    for (auto& v : scaled_b[0]) v *= 1e3;
    const bool flipped = (knn_a > knn_b) && (knn_score(scalarize_rows(scaled_a, w), 6) <
                                             knn_score(scalarize_rows(scaled_b, w), 6));

    Outcome out;
    out.pass = identical && flipped;
    out.detail = std::string("depths/scores bit-identical under x1e-3 and x1e3: ") +
                 (identical ? "yes" : "no") +
                 "; scalarized kNN ranking flip witnessed: " + (flipped ? "yes" : "no");
    return out;
}

// --- 10: training-time scaling ------------------------------------------------------------------

Outcome criterion10() {
    BenchConfig jensen;
    jensen.sorter = Sorter::jensen;
    jensen.n_grid = {100, 316, 1000, 2512};
    jensen.repetitions = 3;
    jensen.seed = 20250811;
    const auto jr = run_bench(jensen);

    BenchConfig deb;
    deb.sorter = Sorter::deb;
    deb.n_grid = {100, 158, 251, 398};
    deb.repetitions = 3;
    deb.seed = 20250812;
    const auto dr = run_bench(deb);

    const bool jensen_ok = jr.loglog_slope_n >= 1.8 && jr.loglog_slope_n <= 2.7;
    const bool deb_ok = dr.loglog_slope_n >= 3.5;
    Outcome out;
    out.pass = jensen_ok && deb_ok;
    out.detail = "jensen slope " + fmt(jr.loglog_slope_n) +
                 " (band [1.8, 2.7]); deb slope " + fmt(dr.loglog_slope_n) + " (>= 3.5)";
    return out;
}

// --- 11: trajectory pipeline ---------------------------------------------------------------------

Outcome criterion11() {
    TrajectoryExperimentConfig cfg;
    cfg.n_train = 500;
    cfg.n_test_nominal = 150;
    cfg.n_test_anomalous = 50;
    cfg.weight_grid = 100;
    cfg.runs = 20;
    cfg.k_grid_min = 3;
    cfg.k_grid_max = 10;
    cfg.seed = 20250813;
    cfg.threads = g_threads;
    const auto result = run_trajectory_experiment(cfg);

    const int wins = result.wins_over_median_all_methods();
    const double heuristic = result.pda_stat().mean;
    const double best = result.best_grid_auc();
    const bool wins_ok = wins >= 15;
    const bool grid_ok = heuristic >= best - 0.02;
    Outcome out;
    out.pass = wins_ok && grid_ok;
    out.detail = "pda beats every baseline median in " + std::to_string(wins) +
                 "/20 runs (need 15); heuristic mean auc " + fmt(heuristic) +
                 " vs best grid cell " + fmt(best) + " (allowed gap 0.02)";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criteria") == 0 && i + 1 < argc) {
            std::string arg = argv[++i];
            std::size_t pos = 0;
            while (pos < arg.size()) {
                selected.push_back(std::atoi(arg.c_str() + pos));
                const std::size_t comma = arg.find(',', pos);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
            g_threads = static_cast<unsigned>(std::atoi(argv[++i]));
        }
    }

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1},  {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5},  {6, criterion6}, {7, criterion7}, {8, criterion8},
        {9, criterion9},  {10, criterion10}, {11, criterion11},
    };

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), id) == selected.end()) {
            continue;
        }
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s - criterion %2d: %s\n", outcome.pass ? "PASS" : "FAIL", id,
                    outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
