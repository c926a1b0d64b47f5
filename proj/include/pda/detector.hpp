#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pda/criteria.hpp"
#include "pda/front_ledger.hpp"
#include "pda/nondominated_sort.hpp"

namespace pda {

// Trained PDA detector: the training dissimilarity stack, the front ledger
// over all N(N-1)/2 training dyads, and the per-criterion neighbor counts.
// Immutable after train(); scoring from many threads is safe.
struct PdaModel {
    DissimilarityStack stack;
    FrontLedger ledger;
    std::vector<int> neighbor_counts;  // k_l per criterion
    Sorter sorter = Sorter::jensen;

    std::size_t train_size() const { return stack.size(); }
    std::size_t criteria() const { return stack.criteria(); }
    std::size_t front_count() const { return ledger.front_count(); }
    int total_neighbors() const;  // s = sum_l k_l
};

struct AnomalyScore {
    double value = 0.0;                 // mean depth, in [1, M+1]
    std::vector<std::uint32_t> depths;  // the s contributing Pareto depths

    std::size_t neighbors() const { return depths.size(); }
};

enum class Label : std::uint8_t { nominal = 0, anomalous = 1 };

// Dyad index of training pair (i, j), i < j, in the fixed enumeration
// (0,1), (0,2), ..., (0,N-1), (1,2), ...; and its inverse.
std::size_t dyad_index(std::size_t i, std::size_t j, std::size_t n);
std::pair<std::uint32_t, std::uint32_t> dyad_pair(std::size_t index, std::size_t n);

// Per-criterion neighbor counts: k_l starts at ceil(ln N) and grows until the
// symmetric k_l-NN graph under criterion l is connected.
std::vector<int> choose_k(const DissimilarityStack& stack);

// Build the model: all training dyads, Pareto fronts, and the k heuristic.
// k_override, when nonempty, replaces the heuristic (one entry per criterion).
PdaModel train(DissimilarityStack stack, Sorter sorter = Sorter::jensen,
               std::vector<int> k_override = {});

// The s = sum_l k_l test dyads for one test sample given its K test-to-train
// dissimilarity rows. A training sample nearest under several criteria
// contributes one copy per criterion.
std::vector<Dyad> test_dyads(const PdaModel& model,
                             const std::vector<std::vector<double>>& test_dissims);

AnomalyScore score(const PdaModel& model,
                   const std::vector<std::vector<double>>& test_dissims,
                   DepthMode mode = DepthMode::exact);

inline Label classify(double score_value, double rho) {
    return score_value > rho ? Label::anomalous : Label::nominal;
}

// Neighbor order (ascending dissimilarity, ties by index) under one criterion.
std::vector<std::uint32_t> neighbor_order(std::span<const double> dissims);

}  // namespace pda
