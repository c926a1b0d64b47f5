#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pda/dyad.hpp"

namespace pda::testing {

// Peeling oracle: repeatedly remove the non-dominated subset.
inline std::vector<std::uint32_t> brute_force_depths(std::span<const double> coords,
                                                     std::size_t n, std::size_t k) {
    std::vector<std::uint32_t> depths(n, 0);
    std::vector<std::uint32_t> alive;
    for (std::size_t i = 0; i < n; ++i) alive.push_back(static_cast<std::uint32_t>(i));
    std::uint32_t depth = 0;
    while (!alive.empty()) {
        ++depth;
        std::vector<std::uint32_t> front, rest;
        for (std::uint32_t a : alive) {
            bool dominated = false;
            for (std::uint32_t b : alive) {
                if (a == b) continue;
                if (pda::dominates_row(coords.data() + std::size_t(b) * k,
                                       coords.data() + std::size_t(a) * k, k)) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? rest : front).push_back(a);
        }
        for (std::uint32_t f : front) depths[f] = depth;
        alive.swap(rest);
    }
    return depths;
}

// Definitional depth query: smallest j such that q strictly dominates a dyad
// assigned depth j, else max depth + 1. Uses only the depth array.
inline std::uint32_t brute_force_query_depth(std::span<const double> coords, std::size_t n,
                                             std::size_t k,
                                             const std::vector<std::uint32_t>& depths,
                                             std::span<const double> q) {
    std::uint32_t max_depth = 0;
    for (auto d : depths) max_depth = std::max(max_depth, d);
    for (std::uint32_t j = 1; j <= max_depth; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (depths[i] != j) continue;
            if (pda::dominates_row(q.data(), coords.data() + i * k, k)) return j;
        }
    }
    return max_depth + 1;
}

// Random flat instance in [0,1]^k; duplicate_fraction of rows are copies of
// earlier rows, and quantize > 0 snaps coordinates to a grid to force ties.
inline std::vector<double> random_instance(std::mt19937_64& rng, std::size_t n,
                                           std::size_t k, double duplicate_fraction = 0.0,
                                           int quantize = 0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> coords(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        const bool duplicate =
            i > 0 && duplicate_fraction > 0.0 && unif(rng) < duplicate_fraction;
        if (duplicate) {
            std::uniform_int_distribution<std::size_t> pick(0, i - 1);
            const std::size_t src = pick(rng);
            for (std::size_t j = 0; j < k; ++j) coords[i * k + j] = coords[src * k + j];
        } else {
            for (std::size_t j = 0; j < k; ++j) {
                double v = unif(rng);
                if (quantize > 0) v = std::floor(v * quantize) / quantize;
                coords[i * k + j] = v;
            }
        }
    }
    return coords;
}

inline std::vector<pda::Dyad> dyads_from_flat(const std::vector<double>& coords,
                                              std::size_t n, std::size_t k) {
    std::vector<pda::Dyad> dyads(n);
    for (std::size_t i = 0; i < n; ++i) {
        dyads[i].values.assign(coords.begin() + i * k, coords.begin() + (i + 1) * k);
        dyads[i].left = 0;
        dyads[i].right = static_cast<std::int32_t>(i + 1);
    }
    return dyads;
}

}  // namespace pda::testing
