#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "pda/baselines.hpp"
#include "pda/detector.hpp"
#include "pda/synthgen.hpp"

using namespace pda;

namespace {

// |dx|, |dy| criteria over 2D points, the staple fixture.
DissimilarityStack absdiff_stack(const std::vector<double>& pts, std::size_t n) {
    DissimilarityStack stack(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            stack.set(0, i, j, std::abs(pts[2 * i] - pts[2 * j]));
            stack.set(1, i, j, std::abs(pts[2 * i + 1] - pts[2 * j + 1]));
        }
    }
    return stack;
}

std::vector<std::vector<double>> absdiff_test_rows(const std::vector<double>& pts,
                                                   std::size_t n, double x, double y) {
    std::vector<std::vector<double>> rows(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rows[0][i] = std::abs(x - pts[2 * i]);
        rows[1][i] = std::abs(y - pts[2 * i + 1]);
    }
    return rows;
}

// BFS connectivity oracle over the symmetric kNN graph.
bool symmetric_knn_connected(const DissimilarityStack& stack, std::size_t criterion,
                             int k) {
    const std::size_t n = stack.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto order = neighbor_order(stack.matrix(criterion).subspan(i * n, n));
        int added = 0;
        for (std::uint32_t j : order) {
            if (j == i) continue;
            adj[i].push_back(j);
            adj[j].push_back(static_cast<std::uint32_t>(i));
            if (++added == k) break;
        }
    }
    std::vector<char> seen(n, 0);
    std::queue<std::uint32_t> queue;
    queue.push(0);
    seen[0] = 1;
    std::size_t visited = 1;
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop();
        for (auto v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                queue.push(v);
            }
        }
    }
    return visited == n;
}

}  // namespace

TEST_CASE("dyad index enumeration round-trips") {
    const std::size_t n = 9;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++idx) {
            CHECK(dyad_index(i, j, n) == idx);
            const auto pair = dyad_pair(idx, n);
            CHECK(pair.first == i);
            CHECK(pair.second == j);
        }
    }
    CHECK(idx == n * (n - 1) / 2);
}

TEST_CASE("choose_k heuristic") {
    SUBCASE("connected at the starting value: N = 400 gives k = 6") {
        const auto pts = gen_uniform_points(400, 2, 31);
        const auto stack = absdiff_stack(pts, 400);
        const auto k = choose_k(stack);
        REQUIRE(k.size() == 2);
        // ceil(ln 400) = 6; the uniform cloud is connected there.
        CHECK(k[0] == 6);
        CHECK(k[1] == 6);
        CHECK(symmetric_knn_connected(stack, 0, k[0]));
        CHECK(symmetric_knn_connected(stack, 1, k[1]));
    }
    SUBCASE("N = 3 in general position") {
        const std::vector<double> pts = {0.1, 0.2, 0.5, 0.9, 0.8, 0.3};
        const auto stack = absdiff_stack(pts, 3);
        const auto k = choose_k(stack);
        CHECK(k[0] == 2);  // ceil(ln 3) = 2, complete graph
    }
    SUBCASE("two well-separated clusters force increments") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::size_t n = 40;
        std::vector<double> pts(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            const double offset = i < 20 ? 0.0 : 1000.0;
            pts[2 * i] = unif(rng) + offset;
            pts[2 * i + 1] = unif(rng) + offset;
        }
        const auto stack = absdiff_stack(pts, n);
        const auto k = choose_k(stack);
        const int start = static_cast<int>(std::ceil(std::log(40.0)));  // 4
        CHECK(k[0] > start);
        CHECK(symmetric_knn_connected(stack, 0, k[0]));
        CHECK_FALSE(symmetric_knn_connected(stack, 0, k[0] - 1));
    }
}

TEST_CASE("training") {
    SUBCASE("N = 3 trains on 3 dyads") {
        const std::vector<double> pts = {0.1, 0.2, 0.5, 0.9, 0.8, 0.3};
        const auto model = train(absdiff_stack(pts, 3));
        CHECK(model.ledger.size() == 3);
        CHECK(model.front_count() <= 3);
        CHECK(model.front_count() >= 1);
    }
    SUBCASE("deb and jensen agree") {
        const auto pts = gen_uniform_points(30, 2, 23);
        auto stack = absdiff_stack(pts, 30);
        const auto a = train(stack, Sorter::deb);
        const auto b = train(std::move(stack), Sorter::jensen);
        CHECK(a.ledger.depths() == b.ledger.depths());
    }
    SUBCASE("uniform 2D staircase fronts satisfy the ledger invariants") {
        const auto pts = gen_uniform_points(40, 2, 31);
        const auto model = train(absdiff_stack(pts, 40));
        CHECK(model.ledger.size() == 40 * 39 / 2);
        CHECK(model.front_count() >= 20);  // many shallow staircase fronts
        for (std::size_t j = 1; j <= std::min<std::size_t>(model.front_count(), 25); ++j) {
            const auto members = model.ledger.front_members(j);
            for (auto a : members) {
                for (auto b : members) {
                    if (a == b) continue;
                    CHECK_FALSE(strictly_dominates(model.ledger.dyad_values(a),
                                                   model.ledger.dyad_values(b)));
                }
            }
        }
    }
}

TEST_CASE("test dyad construction") {
    const auto pts = gen_uniform_points(50, 2, 77);
    auto stack = absdiff_stack(pts, 50);

    SUBCASE("s equals the sum of the neighbor counts") {
        const auto model = train(std::move(stack), Sorter::jensen, {6, 7});
        const auto rows = absdiff_test_rows(pts, 50, 0.5, 0.5);
        const auto dyads = test_dyads(model, rows);
        CHECK(dyads.size() == 13);
        CHECK(model.total_neighbors() == 13);
        for (const auto& d : dyads) {
            CHECK(d.left == kTestSample);
            CHECK(d.values[0] == rows[0][d.right]);
            CHECK(d.values[1] == rows[1][d.right]);
        }
    }
    SUBCASE("a shared nearest neighbor contributes one copy per criterion") {
        const auto model = train(std::move(stack), Sorter::jensen, {1, 1});
        // Probe right next to a training point: nearest under both criteria.
        const auto rows = absdiff_test_rows(pts, 50, pts[0] + 1e-9, pts[1] + 1e-9);
        const auto dyads = test_dyads(model, rows);
        REQUIRE(dyads.size() == 2);
        CHECK(dyads[0].right == dyads[1].right);
        CHECK(dyads[0].values == dyads[1].values);
    }
}

TEST_CASE("scoring") {
    const auto pts = gen_uniform_points(20, 2, 101);
    const auto model = train(absdiff_stack(pts, 20));

    SUBCASE("score is the mean of the contributing depths") {
        const auto rows = absdiff_test_rows(pts, 20, 0.4, 0.6);
        const auto s = score(model, rows);
        CHECK(s.neighbors() == static_cast<std::size_t>(model.total_neighbors()));
        double mean = 0.0;
        for (auto d : s.depths) mean += d;
        mean /= static_cast<double>(s.depths.size());
        CHECK(s.value == mean);
        CHECK(s.value >= 1.0);
        CHECK(s.value <= static_cast<double>(model.front_count() + 1));
    }
    SUBCASE("a test sample equal to a training sample stays shallow") {
        // Verified on this fixture: each test dyad duplicates a training dyad
        // of sample 7, and its depth is at most that dyad's depth + 1.
        const auto rows = absdiff_test_rows(pts, 20, pts[14], pts[15]);
        const auto s = score(model, rows, DepthMode::exact);
        const std::size_t n = 20;
        const auto dyads = test_dyads(model, rows);
        for (const auto& d : dyads) {
            const std::size_t i = std::min<std::size_t>(7, d.right);
            const std::size_t j = std::max<std::size_t>(7, d.right);
            if (i == j) continue;
            const auto train_depth = model.ledger.depth_of(dyad_index(i, j, n));
            CHECK(model.ledger.pareto_depth(d.values) <= train_depth + 1);
        }
        const auto far_rows = absdiff_test_rows(pts, 20, 50.0, 50.0);
        CHECK(s.value < score(model, far_rows).value);
    }
    SUBCASE("a sample beyond all data saturates at M + 1") {
        const auto rows = absdiff_test_rows(pts, 20, 1e6, 1e6);
        const auto s = score(model, rows);
        CHECK(s.value == static_cast<double>(model.front_count() + 1));
    }
    SUBCASE("exact and accelerated scores agree") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> unif(-0.2, 1.2);
        for (int rep = 0; rep < 50; ++rep) {
            const auto rows = absdiff_test_rows(pts, 20, unif(rng), unif(rng));
            CHECK(score(model, rows, DepthMode::exact).value ==
                  score(model, rows, DepthMode::accelerated).value);
        }
    }
}

TEST_CASE("dominance between paired test dyads orders the scores") {
    const auto pts = gen_uniform_points(40, 2, 2025);
    const auto model = train(absdiff_stack(pts, 40));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 30; ++rep) {
        auto rows_a = absdiff_test_rows(pts, 40, unif(rng), unif(rng));
        // Adding a positive offset preserves neighbor order, so the two dyad
        // lists pair up with a's dyads strictly dominating b's.
        auto rows_b = rows_a;
        for (auto& row : rows_b) {
            for (auto& v : row) v += 0.05;
        }
        CHECK(score(model, rows_a).value <= score(model, rows_b).value);
    }
}

TEST_CASE("classification threshold is strict") {
    CHECK(classify(2.5, 3.0) == Label::nominal);
    CHECK(classify(3.5, 3.0) == Label::anomalous);
    CHECK(classify(3.0, 3.0) == Label::nominal);
}

TEST_CASE("per-criterion rescaling leaves depths and scores unchanged") {
    const auto pts = gen_uniform_points(60, 2, 919);
    auto stack = absdiff_stack(pts, 60);
    const auto model = train(absdiff_stack(pts, 60));

    for (const double factor : {1e-3, 1e3}) {
        auto scaled_stack = absdiff_stack(pts, 60);
        scaled_stack.scale_criterion(0, factor);
        const auto scaled_model = train(std::move(scaled_stack));

        CHECK(scaled_model.ledger.depths() == model.ledger.depths());
        CHECK(scaled_model.neighbor_counts == model.neighbor_counts);

        std::mt19937_64 rng(4242);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int rep = 0; rep < 25; ++rep) {
            auto rows = absdiff_test_rows(pts, 60, unif(rng), unif(rng));
            const auto base = score(model, rows);
            for (auto& v : rows[0]) v *= factor;
            const auto scaled = score(scaled_model, rows);
            CHECK(scaled.depths == base.depths);
            CHECK(scaled.value == base.value);
        }
    }
}

TEST_CASE("scalarized kNN ranking is not scale invariant (witness fixture)") {
    // Training cluster with two criteria on different scales; two test samples
    // whose kNN order flips when criterion 0 is rescaled, while the PDA depth
    // multisets stay identical.
    const std::size_t n = 12;
    std::mt19937_64 rng(3333);
    std::uniform_real_distribution<double> unif(0.0, 0.05);
    DissimilarityStack stack(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            stack.set(0, i, j, unif(rng));
            stack.set(1, i, j, unif(rng) * 100.0);
        }
    }
    std::vector<std::vector<double>> rows_a(2, std::vector<double>(n));
    std::vector<std::vector<double>> rows_b(2, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        rows_a[0][i] = 1.0 + unif(rng);
        rows_a[1][i] = 100.0 + unif(rng);
        rows_b[0][i] = 2.0 + unif(rng);
        rows_b[1][i] = 50.0 + unif(rng);
    }

    const std::vector<double> w = {0.5, 0.5};
    const int k = 3;
    const double knn_a = knn_score(scalarize_rows(rows_a, w), k);
    const double knn_b = knn_score(scalarize_rows(rows_b, w), k);
    CHECK(knn_a > knn_b);  // A looks more anomalous at unit scale

    const double factor = 1000.0;
    auto scaled_a = rows_a, scaled_b = rows_b;
    for (auto& v : scaled_a[0]) v *= factor;
    for (auto& v : scaled_b[0]) v *= factor;
    const double knn_a_scaled = knn_score(scalarize_rows(scaled_a, w), k);
    const double knn_b_scaled = knn_score(scalarize_rows(scaled_b, w), k);
    CHECK(knn_a_scaled < knn_b_scaled);  // the ranking flipped

    const auto model = train(DissimilarityStack(stack), Sorter::jensen, {k, k});
    auto scaled_stack = stack;
    scaled_stack.scale_criterion(0, factor);
    const auto scaled_model = train(std::move(scaled_stack), Sorter::jensen, {k, k});
    const auto sa = score(model, rows_a);
    const auto sb = score(model, rows_b);
    const auto sa_scaled = score(scaled_model, scaled_a);
    const auto sb_scaled = score(scaled_model, scaled_b);
    CHECK(sa.depths == sa_scaled.depths);
    CHECK(sb.depths == sb_scaled.depths);
    CHECK(sa.value == sa_scaled.value);
    CHECK(sb.value == sb_scaled.value);
}

TEST_CASE("train rejects undersized inputs and bad overrides") {
    const std::vector<double> pts = {0.1, 0.2, 0.5, 0.9};
    CHECK_THROWS_AS(train(absdiff_stack(pts, 2)), std::invalid_argument);

    const auto pts3 = gen_uniform_points(10, 2, 1);
    CHECK_THROWS_AS(train(absdiff_stack(pts3, 10), Sorter::jensen, {1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(train(absdiff_stack(pts3, 10), Sorter::jensen, {1, 100}),
                    std::invalid_argument);
}
