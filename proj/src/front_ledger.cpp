#include "pda/front_ledger.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pda {

FrontLedger& FrontLedger::operator=(FrontLedger&& other) noexcept {
    if (this != &other) {
        criteria_ = other.criteria_;
        depth_ = std::move(other.depth_);
        fronts_ = std::move(other.fronts_);
        fallbacks_.store(other.fallbacks_.load());
    }
    return *this;
}

FrontLedger FrontLedger::from_depths(std::vector<double> coords, std::size_t criteria,
                                     const std::vector<std::uint32_t>& depths) {
    if (criteria == 0) throw std::invalid_argument("FrontLedger: criteria must be >= 1");
    if (depths.empty()) throw std::invalid_argument("FrontLedger: empty dyad set");
    if (coords.size() != depths.size() * criteria) {
        throw std::invalid_argument("FrontLedger: coords/depths size mismatch");
    }

    FrontLedger ledger;
    ledger.criteria_ = criteria;
    ledger.depth_ = depths;

    std::uint32_t max_depth = 0;
    for (std::uint32_t d : depths) {
        if (d == 0) throw std::invalid_argument("FrontLedger: depths are 1-based");
        max_depth = std::max(max_depth, d);
    }
    ledger.fronts_.resize(max_depth);
    for (std::size_t i = 0; i < depths.size(); ++i) {
        ledger.fronts_[depths[i] - 1].members.push_back(static_cast<std::uint32_t>(i));
    }
    for (auto& front : ledger.fronts_) {
        if (front.members.empty()) {
            throw std::invalid_argument("FrontLedger: depth assignment skips a front");
        }
        if (criteria == 2) {
            std::sort(front.members.begin(), front.members.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          const double ax = coords[2 * a], bx = coords[2 * b];
                          if (ax != bx) return ax < bx;
                          return coords[2 * a + 1] < coords[2 * b + 1];
                      });
        }
        front.coords.reserve(front.members.size() * criteria);
        for (std::uint32_t m : front.members) {
            const double* row = coords.data() + static_cast<std::size_t>(m) * criteria;
            front.coords.insert(front.coords.end(), row, row + criteria);
        }
    }
    return ledger;
}

std::span<const std::uint32_t> FrontLedger::front_members(std::size_t j) const {
    if (j == 0 || j > fronts_.size()) {
        throw std::invalid_argument("front index out of range: " + std::to_string(j));
    }
    return fronts_[j - 1].members;
}

std::span<const double> FrontLedger::dyad_values(std::size_t dyad) const {
    const Front& f = fronts_[depth_[dyad] - 1];
    // Members are value-sorted for K == 2, index-sorted otherwise.
    auto it = criteria_ == 2
                  ? std::find(f.members.begin(), f.members.end(),
                              static_cast<std::uint32_t>(dyad))
                  : std::lower_bound(f.members.begin(), f.members.end(),
                                     static_cast<std::uint32_t>(dyad));
    const std::size_t pos = static_cast<std::size_t>(it - f.members.begin());
    return {f.coords.data() + pos * criteria_, criteria_};
}

bool FrontLedger::below_front_index(std::span<const double> q, std::size_t idx) const {
    const Front& f = fronts_[idx];
    const std::size_t count = f.members.size();
    const double* coords = f.coords.data();
    if (criteria_ == 2) {
        // Members sorted ascending by x; second coordinate is then
        // non-increasing, so the best candidate is the first member with
        // x >= q.x.
        const double qx = q[0], qy = q[1];
        std::size_t lo = 0, hi = count;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (coords[2 * mid] < qx) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if (lo == count) return false;
        const double mx = coords[2 * lo], my = coords[2 * lo + 1];
        if (my > qy) return true;
        if (my == qy) return mx > qx;
        return false;
    }
    for (std::size_t m = 0; m < count; ++m) {
        if (dominates_row(q.data(), coords + m * criteria_, criteria_)) return true;
    }
    return false;
}

bool FrontLedger::below_front(std::span<const double> q, std::size_t j) const {
    if (q.size() != criteria_) {
        throw std::invalid_argument("below_front: dimension mismatch");
    }
    if (j == 0 || j > fronts_.size()) {
        throw std::invalid_argument("below_front: front index out of range");
    }
    return below_front_index(q, j - 1);
}

std::uint32_t FrontLedger::pareto_depth(std::span<const double> q, DepthMode mode) const {
    if (q.size() != criteria_) {
        throw std::invalid_argument("pareto_depth: dimension mismatch");
    }
    const std::size_t m = fronts_.size();
    if (mode == DepthMode::exact) {
        for (std::size_t idx = 0; idx < m; ++idx) {
            if (below_front_index(q, idx)) return static_cast<std::uint32_t>(idx + 1);
        }
        return static_cast<std::uint32_t>(m + 1);
    }

    // Binary search over front indices, assuming the below-predicate is
    // monotone in j. The assumption can fail, so verify that no shallower
    // front is hit; a hit means non-monotonicity and we return the exact
    // answer instead.
    std::size_t lo = 0, hi = m;  // 0-based candidate range
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (below_front_index(q, mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    std::size_t candidate;  // 0-based front index, or m when nothing is dominated
    if (lo < m && below_front_index(q, lo)) {
        candidate = lo;
    } else {
        candidate = m;
    }
    for (std::size_t idx = 0; idx < candidate; ++idx) {
        if (below_front_index(q, idx)) {
            fallbacks_.fetch_add(1, std::memory_order_relaxed);
            return static_cast<std::uint32_t>(idx + 1);
        }
    }
    return static_cast<std::uint32_t>(candidate + 1);
}

}  // namespace pda
