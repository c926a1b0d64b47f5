#include <stdexcept>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pda/criteria.hpp"

using namespace pda;

namespace {

Trajectory traj(std::initializer_list<TrajectoryPoint> pts) {
    Trajectory t;
    t.points = pts;
    return t;
}

// Hand-rolled DP table oracle, kept independent of the implementation.
double dtw_oracle(const Trajectory& s, const Trajectory& t) {
    const std::size_t n = s.size(), m = t.size();
    std::vector<std::vector<double>> dp(n + 1,
        std::vector<double>(m + 1, std::numeric_limits<double>::infinity()));
    dp[0][0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const double c = euclidean_distance(s.points[i - 1], t.points[j - 1]);
            dp[i][j] = c + std::min({dp[i - 1][j], dp[i][j - 1], dp[i - 1][j - 1]});
        }
    }
    return dp[n][m];
}

}  // namespace

TEST_CASE("eskin dissimilarity formula") {
    const std::vector<int> cards6(20, 6);
    const std::vector<int> cards10(20, 10);
    std::vector<int> a(20, 0), b(20, 0);

    CHECK(eskin_dissimilarity(a, b, cards6) == 0.0);

    b[3] = 1;  // single mismatch, n = 6
    CHECK(eskin_dissimilarity(a, b, cards6) == doctest::Approx(2.0 / 38.0).epsilon(1e-12));

    std::vector<int> c(20, 1);
    CHECK(eskin_dissimilarity(a, c, cards10) ==
          doctest::Approx(20.0 * 2.0 / 102.0).epsilon(1e-12));

    const std::vector<int> short_cards(19, 6);
    CHECK_THROWS_AS(eskin_dissimilarity(a, b, short_cards), std::invalid_argument);
}

TEST_CASE("speed histograms") {
    SUBCASE("constant velocity mass lands in the bin containing the speed") {
        Trajectory t = traj({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
        const std::vector<double> edges = {0, 1, 2};
        const auto h = speed_histogram(t, edges);
        CHECK(h.mass.size() == 2);
        CHECK(h.mass[1] > 0.999);
        CHECK(h.mass[0] > 0.0);  // smoothing keeps every bin positive
        CHECK(h.mass[0] + h.mass[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("stationary trajectory concentrates in the first bin") {
        Trajectory t = traj({{5, 5}, {5, 5}, {5, 5}});
        const std::vector<double> edges = {0, 1, 2};
        const auto h = speed_histogram(t, edges);
        CHECK(h.mass[0] > 0.999);
    }
    SUBCASE("hand-counted bin assignment") {
        // speeds {1, 1, 3} against edges [0, 2, 4]
        Trajectory t = traj({{0, 0}, {1, 0}, {2, 0}, {5, 0}});
        const std::vector<double> edges = {0, 2, 4};
        const auto h = speed_histogram(t, edges, 0.0);
        CHECK(h.mass[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(h.mass[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("too-short trajectory is rejected") {
        Trajectory t = traj({{0, 0}});
        CHECK_THROWS_AS(speed_histogram(t, std::vector<double>{0, 1, 2}),
                        std::invalid_argument);
        CHECK_THROWS_AS(trajectory_speeds(t), std::invalid_argument);
    }
}

TEST_CASE("symmetrized KL divergence") {
    SpeedHistogram p{{0, 1, 2}, {0.5, 0.5}};
    SpeedHistogram q{{0, 1, 2}, {0.25, 0.75}};

    CHECK(symmetrized_kl(p, p) == 0.0);

    // Recomputed with extended precision: 0.5 ln 2 + 0.5 ln(2/3)
    //                                   + 0.25 ln(1/2) + 0.75 ln(3/2)
    const double expected = 0.27465307216702745;
    CHECK(symmetrized_kl(p, q) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(symmetrized_kl(p, q) == symmetrized_kl(q, p));

    SpeedHistogram r{{0, 2, 4}, {0.5, 0.5}};
    CHECK_THROWS_AS(symmetrized_kl(p, r), std::invalid_argument);
    CHECK(symmetrized_kl(p, q) >= 0.0);
}

TEST_CASE("dynamic time warping") {
    Trajectory a = traj({{0, 0}, {1, 0}});
    Trajectory b = traj({{0, 0}, {1, 0}, {2, 0}});

    CHECK(dtw_dissimilarity(a, a) == 0.0);
    CHECK(dtw_dissimilarity(traj({{0, 0}}), traj({{3, 4}})) == doctest::Approx(5.0));
    CHECK(dtw_dissimilarity(a, b) == doctest::Approx(1.0));
    CHECK(dtw_dissimilarity(a, b) == doctest::Approx(dtw_oracle(a, b)));
    CHECK_THROWS_AS(dtw_dissimilarity(Trajectory{}, a), std::invalid_argument);

    SUBCASE("DTW never exceeds the unwarped aligned cost for equal lengths") {
        std::mt19937_64 rng(404);
        std::uniform_real_distribution<double> unif(0.0, 10.0);
        for (int rep = 0; rep < 30; ++rep) {
            Trajectory s, t;
            const int p = 5 + static_cast<int>(rng() % 20);
            for (int i = 0; i < p; ++i) {
                s.points.push_back({unif(rng), unif(rng)});
                t.points.push_back({unif(rng), unif(rng)});
            }
            double aligned = 0.0;
            for (int i = 0; i < p; ++i) {
                aligned += euclidean_distance(s.points[i], t.points[i]);
            }
            const double d = dtw_dissimilarity(s, t);
            CHECK(d <= aligned + 1e-9);
            CHECK(d == doctest::Approx(dtw_oracle(s, t)));
            CHECK(d == doctest::Approx(dtw_dissimilarity(t, s)));
        }
    }
}

TEST_CASE("pairwise stacks") {
    SUBCASE("euclidean 2-point stack") {
        const std::vector<double> pts = {0, 0, 3, 4};
        const auto stack = euclidean_stack(pts, 2, 2);
        CHECK(stack.at(0, 0, 1) == doctest::Approx(5.0));
        CHECK(stack.at(0, 1, 0) == doctest::Approx(5.0));
        CHECK(stack.at(0, 0, 0) == 0.0);
        CHECK(stack.at(0, 1, 1) == 0.0);
    }
    SUBCASE("criterion failures carry the pair identity") {
        std::vector<PairwiseCriterion> criteria;
        criteria.push_back([](std::size_t i, std::size_t j) -> double {
            if (i == 1 && j == 2) throw std::runtime_error("boom");
            return 1.0;
        });
        try {
            pairwise_stack(4, criteria, 1);
            FAIL("expected an error");
        } catch (const std::runtime_error& e) {
            const std::string what = e.what();
            CHECK(what.find("(1, 2)") != std::string::npos);
            CHECK(what.find("criterion 0") != std::string::npos);
        }
    }
    SUBCASE("categorical stack matches direct eskin calls") {
        CategoricalDataset data;
        data.schema.cardinalities = {{6, 7, 8}, {9, 10, 6}};
        std::mt19937_64 rng(99);
        for (int s = 0; s < 6; ++s) {
            CategoricalSample sample;
            for (const auto& cards : data.schema.cardinalities) {
                std::vector<int> vals;
                for (int c : cards) vals.push_back(static_cast<int>(rng() % c));
                sample.groups.push_back(vals);
            }
            data.samples.push_back(sample);
        }
        const auto stack = categorical_stack(data);
        CHECK(stack.criteria() == 2);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                for (std::size_t g = 0; g < 2; ++g) {
                    const double direct =
                        eskin_dissimilarity(data.samples[i].groups[g],
                                            data.samples[j].groups[g],
                                            data.schema.cardinalities[g]);
                    CHECK(stack.at(g, i, j) == direct);
                }
            }
        }
    }
    SUBCASE("parallel construction is deterministic") {
        const std::size_t n = 24;
        std::vector<PairwiseCriterion> criteria;
        criteria.push_back([](std::size_t i, std::size_t j) {
            return std::abs(std::sin(static_cast<double>(i * 31 + j)));
        });
        const auto one = pairwise_stack(n, criteria, 1);
        const auto four = pairwise_stack(n, criteria, 4);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(one.at(0, i, j) == four.at(0, i, j));
            }
        }
    }
}

TEST_CASE("trajectory criteria produce symmetric stacks that vanish on identity") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 5.0);
    std::vector<Trajectory> trajs;
    for (int i = 0; i < 8; ++i) {
        Trajectory t;
        const int p = 4 + static_cast<int>(rng() % 10);
        for (int s = 0; s < p; ++s) t.points.push_back({unif(rng), unif(rng)});
        trajs.push_back(t);
    }
    const auto crit = trajectory_criteria(trajs);
    const auto stack = trajectory_stack(trajs, crit);
    CHECK(stack.criteria() == 2);
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t i = 0; i < trajs.size(); ++i) {
            CHECK(stack.at(l, i, i) == 0.0);
            for (std::size_t j = 0; j < trajs.size(); ++j) {
                CHECK(stack.at(l, i, j) == stack.at(l, j, i));
                CHECK(stack.at(l, i, j) >= 0.0);
            }
        }
    }
    const auto rows = trajectory_test_dissims(trajs, crit, trajs[3]);
    CHECK(rows[0][3] == 0.0);
    CHECK(rows[1][3] == 0.0);
}
