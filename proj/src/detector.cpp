#include "pda/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pda {

int PdaModel::total_neighbors() const {
    return std::accumulate(neighbor_counts.begin(), neighbor_counts.end(), 0);
}

std::size_t dyad_index(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= j || j >= n) throw std::invalid_argument("dyad_index: need i < j < N");
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<std::uint32_t, std::uint32_t> dyad_pair(std::size_t index, std::size_t n) {
    // Binary search the row; rows start at dyad_index(i, i+1, n).
    std::size_t lo = 0, hi = n - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (dyad_index(mid, mid + 1, n) <= index) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const std::size_t i = lo;
    const std::size_t j = i + 1 + (index - dyad_index(i, i + 1, n));
    if (j >= n) throw std::invalid_argument("dyad_pair: index out of range");
    return {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
}

std::vector<std::uint32_t> neighbor_order(std::span<const double> dissims) {
    std::vector<std::uint32_t> order(dissims.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (dissims[a] != dissims[b]) return dissims[a] < dissims[b];
        return a < b;
    });
    return order;
}

namespace {

// Union-find over sample indices.
struct DisjointSets {
    std::vector<std::uint32_t> parent;
    std::size_t components;

    explicit DisjointSets(std::size_t n) : parent(n), components(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[b] = a;
            --components;
        }
    }
};

}  // namespace

std::vector<int> choose_k(const DissimilarityStack& stack) {
    const std::size_t n = stack.size();
    if (n < 3) throw std::invalid_argument("choose_k: need at least 3 training samples");
    const int start = static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
    const int max_k = static_cast<int>(n) - 1;

    std::vector<int> counts(stack.criteria());
    for (std::size_t l = 0; l < stack.criteria(); ++l) {
        // Neighbor order per sample, self excluded.
        std::vector<std::vector<std::uint32_t>> order(n);
        const auto m = stack.matrix(l);
        for (std::size_t i = 0; i < n; ++i) {
            auto full = neighbor_order(m.subspan(i * n, n));
            order[i].reserve(n - 1);
            for (std::uint32_t idx : full) {
                if (idx != i) order[i].push_back(idx);
            }
        }

        DisjointSets sets(n);
        int k = std::max(1, std::min(start, max_k));
        for (int column = 0; column < k; ++column) {
            for (std::size_t i = 0; i < n; ++i) {
                sets.unite(static_cast<std::uint32_t>(i), order[i][column]);
            }
        }
        while (sets.components > 1 && k < max_k) {
            for (std::size_t i = 0; i < n; ++i) {
                sets.unite(static_cast<std::uint32_t>(i), order[i][k]);
            }
            ++k;
        }
        counts[l] = k;
    }
    return counts;
}

PdaModel train(DissimilarityStack stack, Sorter sorter, std::vector<int> k_override) {
    const std::size_t n = stack.size();
    const std::size_t k = stack.criteria();
    if (n < 3) throw std::invalid_argument("train: need at least 3 training samples");

    PdaModel model;
    if (k_override.empty()) {
        model.neighbor_counts = choose_k(stack);
    } else {
        if (k_override.size() != k) {
            throw std::invalid_argument("train: k_override must have one entry per criterion");
        }
        for (int v : k_override) {
            if (v < 1 || static_cast<std::size_t>(v) > n - 1) {
                throw std::invalid_argument("train: k_override entries must be in [1, N-1]");
            }
        }
        model.neighbor_counts = std::move(k_override);
    }

    const std::size_t dyads = n * (n - 1) / 2;
    std::vector<double> coords(dyads * k);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++row) {
            for (std::size_t l = 0; l < k; ++l) {
                coords[row * k + l] = stack.at(l, i, j);
            }
        }
    }
    const auto depths = nondominated_depths(coords, dyads, k, sorter);
    model.ledger = FrontLedger::from_depths(std::move(coords), k, depths);
    model.stack = std::move(stack);
    model.sorter = sorter;
    return model;
}

std::vector<Dyad> test_dyads(const PdaModel& model,
                             const std::vector<std::vector<double>>& test_dissims) {
    const std::size_t k = model.criteria();
    const std::size_t n = model.train_size();
    if (test_dissims.size() != k) {
        throw std::invalid_argument("test_dyads: expected one dissimilarity row per criterion");
    }
    for (std::size_t l = 0; l < k; ++l) {
        if (test_dissims[l].size() != n) {
            throw std::invalid_argument("test_dyads: criterion " + std::to_string(l) +
                                        " row has wrong length");
        }
        for (double v : test_dissims[l]) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("test_dyads: criterion " + std::to_string(l) +
                                            " produced a non-finite or negative value");
            }
        }
    }

    std::vector<Dyad> dyads;
    dyads.reserve(static_cast<std::size_t>(model.total_neighbors()));
    for (std::size_t l = 0; l < k; ++l) {
        const auto order = neighbor_order(test_dissims[l]);
        const int kl = model.neighbor_counts[l];
        for (int r = 0; r < kl; ++r) {
            const std::uint32_t neighbor = order[static_cast<std::size_t>(r)];
            Dyad d;
            d.left = kTestSample;
            d.right = static_cast<std::int32_t>(neighbor);
            d.values.resize(k);
            for (std::size_t c = 0; c < k; ++c) d.values[c] = test_dissims[c][neighbor];
            dyads.push_back(std::move(d));
        }
    }
    return dyads;
}

AnomalyScore score(const PdaModel& model,
                   const std::vector<std::vector<double>>& test_dissims, DepthMode mode) {
    const auto dyads = test_dyads(model, test_dissims);
    AnomalyScore result;
    result.depths.reserve(dyads.size());
    double total = 0.0;
    for (const Dyad& d : dyads) {
        const std::uint32_t e = model.ledger.pareto_depth(d.values, mode);
        result.depths.push_back(e);
        total += static_cast<double>(e);
    }
    result.value = total / static_cast<double>(dyads.size());
    return result;
}

}  // namespace pda
