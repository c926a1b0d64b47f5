#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "pda/dyad.hpp"

namespace pda {

enum class DepthMode { exact, accelerated };

// Depth-indexed partition of a dyad set into Pareto fronts F_1..F_M.
//
// Invariants: the fronts partition the input set; no member of a front
// strictly dominates another member of the same front; every member of F_j
// (j > 1) is strictly dominated by some member of F_{j-1}.
//
// Immutable after construction, so depth queries from multiple threads are
// safe. For K == 2 each front keeps its members sorted ascending by the first
// coordinate, which reduces a below-front test to one binary search.
class FrontLedger {
public:
    FrontLedger() = default;
    FrontLedger(FrontLedger&& other) noexcept { *this = std::move(other); }
    FrontLedger& operator=(FrontLedger&& other) noexcept;
    FrontLedger(const FrontLedger&) = delete;
    FrontLedger& operator=(const FrontLedger&) = delete;

    // coords: n*k row-major dyad values; depths: 1-based front index per dyad.
    static FrontLedger from_depths(std::vector<double> coords, std::size_t criteria,
                                   const std::vector<std::uint32_t>& depths);

    std::size_t criteria() const { return criteria_; }
    std::size_t size() const { return depth_.size(); }
    std::size_t front_count() const { return fronts_.size(); }  // M
    bool empty() const { return depth_.empty(); }

    std::uint32_t depth_of(std::size_t dyad) const { return depth_[dyad]; }
    const std::vector<std::uint32_t>& depths() const { return depth_; }

    // Members of F_j, 1-based j in 1..M. Sorted by first coordinate when K==2,
    // otherwise in input order.
    std::span<const std::uint32_t> front_members(std::size_t j) const;
    std::span<const double> dyad_values(std::size_t dyad) const;

    // True iff q strictly dominates at least one member of F_j (1-based j).
    bool below_front(std::span<const double> q, std::size_t j) const;

    // Pareto depth of q: the smallest j such that q is below F_j, or M+1 when
    // q dominates no member of any front.
    //
    // exact scans fronts in increasing j. accelerated runs the binary search
    // over front indices, then verifies minimality of the located boundary;
    // whenever the below-predicate turns out non-monotone it falls back to the
    // exact answer and counts the event.
    std::uint32_t pareto_depth(std::span<const double> q,
                               DepthMode mode = DepthMode::exact) const;

    std::uint64_t accelerated_fallbacks() const { return fallbacks_.load(); }

private:
    struct Front {
        std::vector<std::uint32_t> members;
        std::vector<double> coords;  // packed member values, same order as members
    };

    bool below_front_index(std::span<const double> q, std::size_t idx) const;

    std::size_t criteria_ = 0;
    std::vector<std::uint32_t> depth_;
    std::vector<Front> fronts_;
    mutable std::atomic<std::uint64_t> fallbacks_{0};
};

}  // namespace pda
