#include "pda/nondominated_sort.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pda {

namespace {

void validate_flat(std::span<const double> coords, std::size_t n, std::size_t k) {
    if (n == 0) throw std::invalid_argument("nondominated sort: empty input");
    if (k == 0) throw std::invalid_argument("nondominated sort: need at least one criterion");
    if (coords.size() != n * k) {
        throw std::invalid_argument("nondominated sort: coords size mismatch");
    }
    for (double v : coords) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument(
                "nondominated sort: coordinates must be finite and nonnegative");
        }
    }
}

// ---------------------------------------------------------------------------
// Divide-and-conquer sort. Works on deduplicated points sorted
// lexicographically; `front` holds 0-based front indices that only ever grow.
//
// helper_a(S, k) resolves dominance among S over coordinates 0..k, assuming
// every dominance influence from outside S has already been pushed into
// `front`, and that all points of S agree on coordinates above k.
// helper_b(L, H, k) pushes the influence of L onto H where any l that weakly
// dominates h on coordinates 0..k is known to strictly dominate it overall.
// ---------------------------------------------------------------------------

// Staircase of (y, front) pairs with y and front both strictly increasing.
// Supports "max front among entries with y <= query" in O(log size).
class StairSet {
public:
    void clear() { entries_.clear(); }

    int query(double y) const {
        auto it = std::upper_bound(entries_.begin(), entries_.end(), y,
                                   [](double v, const Entry& e) { return v < e.y; });
        if (it == entries_.begin()) return -1;
        return std::prev(it)->front;
    }

    void insert(double y, int front) {
        auto it = std::upper_bound(entries_.begin(), entries_.end(), y,
                                   [](double v, const Entry& e) { return v < e.y; });
        if (it != entries_.begin()) {
            auto prev = std::prev(it);
            if (prev->front >= front) return;  // an entry at least as good exists
            if (prev->y == y) it = entries_.erase(prev);
        }
        auto last = it;
        while (last != entries_.end() && last->front <= front) ++last;
        it = entries_.erase(it, last);
        entries_.insert(it, Entry{y, front});
    }

private:
    struct Entry {
        double y;
        int front;
    };
    std::vector<Entry> entries_;
};

struct JensenContext {
    const double* pts = nullptr;  // unique points, row-major
    std::size_t width = 0;        // criterion count
    std::vector<int> front;       // 0-based front per unique point
    StairSet stairs;

    double coord(std::uint32_t id, std::size_t j) const { return pts[id * width + j]; }
    const double* row(std::uint32_t id) const { return pts + id * width; }
    void bump(std::uint32_t id, int value) {
        if (value > front[id]) front[id] = value;
    }
};

bool prefix_strictly_dominates(const double* a, const double* b, int k) {
    bool strict = false;
    for (int i = 0; i <= k; ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

bool prefix_weakly_dominates(const double* a, const double* b, int k) {
    for (int i = 0; i <= k; ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

// 2D sweep over lexicographically sorted points: a predecessor dominates the
// current point exactly when its second coordinate is <= the current one.
void sweep_a(JensenContext& ctx, const std::vector<std::uint32_t>& ids) {
    ctx.stairs.clear();
    for (std::uint32_t id : ids) {
        const double y = ctx.coord(id, 1);
        const int dominator = ctx.stairs.query(y);
        if (dominator >= 0) ctx.bump(id, dominator + 1);
        ctx.stairs.insert(y, ctx.front[id]);
    }
}

// Push front bounds from `low` onto `high` using weak dominance on the first
// two coordinates. Both lists are lexicographically sorted.
void sweep_b(JensenContext& ctx, const std::vector<std::uint32_t>& low,
             const std::vector<std::uint32_t>& high) {
    ctx.stairs.clear();
    std::size_t li = 0;
    for (std::uint32_t h : high) {
        const double hx = ctx.coord(h, 0);
        const double hy = ctx.coord(h, 1);
        while (li < low.size()) {
            const std::uint32_t l = low[li];
            const double lx = ctx.coord(l, 0);
            const double ly = ctx.coord(l, 1);
            if (lx < hx || (lx == hx && ly <= hy)) {
                ctx.stairs.insert(ly, ctx.front[l]);
                ++li;
            } else {
                break;
            }
        }
        const int dominator = ctx.stairs.query(hy);
        if (dominator >= 0) ctx.bump(h, dominator + 1);
    }
}

// Median value of coordinate j over ids (lower median).
double median_coord(const JensenContext& ctx, const std::vector<std::uint32_t>& ids,
                    std::size_t j, std::vector<double>& scratch) {
    scratch.clear();
    scratch.reserve(ids.size());
    for (std::uint32_t id : ids) scratch.push_back(ctx.coord(id, j));
    const std::size_t mid = (scratch.size() - 1) / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    return scratch[mid];
}

// Stable split of ids by coordinate j against threshold m. `strict` selects
// the "< m | >= m" variant instead of "<= m | > m".
void split_by(const JensenContext& ctx, const std::vector<std::uint32_t>& ids,
              std::size_t j, double m, bool strict, std::vector<std::uint32_t>& low,
              std::vector<std::uint32_t>& high) {
    low.clear();
    high.clear();
    for (std::uint32_t id : ids) {
        const double v = ctx.coord(id, j);
        const bool is_low = strict ? (v < m) : (v <= m);
        (is_low ? low : high).push_back(id);
    }
}

void helper_b(JensenContext& ctx, const std::vector<std::uint32_t>& low,
              const std::vector<std::uint32_t>& high, int k);

void helper_a(JensenContext& ctx, const std::vector<std::uint32_t>& ids, int k) {
    const std::size_t n = ids.size();
    if (n < 2) return;
    if (n == 2) {
        if (prefix_strictly_dominates(ctx.row(ids[0]), ctx.row(ids[1]), k)) {
            ctx.bump(ids[1], ctx.front[ids[0]] + 1);
        }
        return;
    }
    if (k == 1) {
        sweep_a(ctx, ids);
        return;
    }

    bool all_equal = true;
    const double first = ctx.coord(ids[0], k);
    for (std::uint32_t id : ids) {
        if (ctx.coord(id, k) != first) {
            all_equal = false;
            break;
        }
    }
    if (all_equal) {
        helper_a(ctx, ids, k - 1);
        return;
    }

    // Split by the median of coordinate k, ties assigned entirely to one side
    // (whichever balances better) so cross pairs are strict on coordinate k.
    std::vector<double> scratch;
    const double m = median_coord(ctx, ids, k, scratch);
    std::vector<std::uint32_t> low_a, high_a, low_b, high_b;
    split_by(ctx, ids, k, m, false, low_a, high_a);  // ties low
    split_by(ctx, ids, k, m, true, low_b, high_b);   // ties high
    const bool a_ok = !low_a.empty() && !high_a.empty();
    const bool b_ok = !low_b.empty() && !high_b.empty();
    const std::size_t bal_a = std::max(low_a.size(), high_a.size());
    const std::size_t bal_b = std::max(low_b.size(), high_b.size());
    const bool use_a = a_ok && (!b_ok || bal_a <= bal_b);
    std::vector<std::uint32_t>& low = use_a ? low_a : low_b;
    std::vector<std::uint32_t>& high = use_a ? high_a : high_b;

    helper_a(ctx, low, k);
    helper_b(ctx, low, high, k - 1);
    helper_a(ctx, high, k);
}

void helper_b(JensenContext& ctx, const std::vector<std::uint32_t>& low,
              const std::vector<std::uint32_t>& high, int k) {
    if (low.empty() || high.empty()) return;
    if (low.size() == 1 || high.size() == 1) {
        for (std::uint32_t h : high) {
            int best = -1;
            for (std::uint32_t l : low) {
                if (prefix_weakly_dominates(ctx.row(l), ctx.row(h), k)) {
                    best = std::max(best, ctx.front[l]);
                }
            }
            if (best >= 0) ctx.bump(h, best + 1);
        }
        return;
    }
    if (k == 0) {
        // Weak dominance on the first coordinate; both lists sorted by it.
        std::size_t li = 0;
        int best = -1;
        for (std::uint32_t h : high) {
            const double hx = ctx.coord(h, 0);
            while (li < low.size() && ctx.coord(low[li], 0) <= hx) {
                best = std::max(best, ctx.front[low[li]]);
                ++li;
            }
            if (best >= 0) ctx.bump(h, best + 1);
        }
        return;
    }
    if (k == 1) {
        sweep_b(ctx, low, high);
        return;
    }

    double lmin = ctx.coord(low[0], k), lmax = lmin;
    for (std::uint32_t id : low) {
        const double v = ctx.coord(id, k);
        lmin = std::min(lmin, v);
        lmax = std::max(lmax, v);
    }
    double hmin = ctx.coord(high[0], k), hmax = hmin;
    for (std::uint32_t id : high) {
        const double v = ctx.coord(id, k);
        hmin = std::min(hmin, v);
        hmax = std::max(hmax, v);
    }
    if (lmax <= hmin) {
        // Coordinate k never blocks weak dominance; drop a dimension.
        helper_b(ctx, low, high, k - 1);
        return;
    }
    if (lmin > hmax) return;  // no l can weakly dominate any h

    // Overlapping ranges: split both sides by a common median of coordinate k.
    std::vector<double> scratch;
    scratch.reserve(low.size() + high.size());
    for (std::uint32_t id : low) scratch.push_back(ctx.coord(id, k));
    for (std::uint32_t id : high) scratch.push_back(ctx.coord(id, k));
    const std::size_t mid = (scratch.size() - 1) / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    double m = scratch[mid];
    double max_all = *std::max_element(scratch.begin(), scratch.end());
    const bool strict = (m == max_all);  // "<= m" would leave the upper part empty

    std::vector<std::uint32_t> l1, l2, h1, h2;
    split_by(ctx, low, k, m, strict, l1, l2);
    split_by(ctx, high, k, m, strict, h1, h2);
    helper_b(ctx, l1, h1, k);
    helper_b(ctx, l1, h2, k - 1);
    helper_b(ctx, l2, h2, k);
}

// Full 2D sort: per-front minimum second coordinate is nondecreasing with
// depth, so each point's front is one binary search.
void sort_2d(JensenContext& ctx, const std::vector<std::uint32_t>& ids) {
    std::vector<double> min_y;
    min_y.reserve(64);
    for (std::uint32_t id : ids) {
        const double y = ctx.coord(id, 1);
        const std::size_t f = static_cast<std::size_t>(
            std::upper_bound(min_y.begin(), min_y.end(), y) - min_y.begin());
        ctx.front[id] = static_cast<int>(f);
        if (f == min_y.size()) {
            min_y.push_back(y);
        } else {
            min_y[f] = y;  // provably smaller than the previous occupant
        }
    }
}

}  // namespace

std::vector<std::uint32_t> deb_depths(std::span<const double> coords, std::size_t n,
                                      std::size_t k) {
    validate_flat(coords, n, k);
    const double* pts = coords.data();
    std::vector<std::uint32_t> dominated_by(n, 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double* a = pts + i * k;
        for (std::size_t j = i + 1; j < n; ++j) {
            switch (dominance_compare(a, pts + j * k, k)) {
                case 1: ++dominated_by[j]; break;
                case 2: ++dominated_by[i]; break;
                default: break;
            }
        }
    }

    std::vector<std::uint32_t> depths(n, 0);
    std::vector<std::uint32_t> current, remaining;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominated_by[i] == 0) {
            depths[i] = 1;
            current.push_back(static_cast<std::uint32_t>(i));
        } else {
            remaining.push_back(static_cast<std::uint32_t>(i));
        }
    }

    std::uint32_t depth = 1;
    std::vector<std::uint32_t> next, rest;
    while (!remaining.empty()) {
        ++depth;
        next.clear();
        rest.clear();
        for (std::uint32_t r : remaining) {
            std::uint32_t count = dominated_by[r];
            const double* b = pts + static_cast<std::size_t>(r) * k;
            for (std::uint32_t f : current) {
                if (dominates_row(pts + static_cast<std::size_t>(f) * k, b, k)) --count;
            }
            dominated_by[r] = count;
            if (count == 0) {
                depths[r] = depth;
                next.push_back(r);
            } else {
                rest.push_back(r);
            }
        }
        current.swap(next);
        remaining.swap(rest);
    }
    return depths;
}

std::vector<std::uint32_t> jensen_depths(std::span<const double> coords, std::size_t n,
                                         std::size_t k) {
    validate_flat(coords, n, k);
    const double* pts = coords.data();

    // Lexicographic order over full rows.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double* ra = pts + static_cast<std::size_t>(a) * k;
        const double* rb = pts + static_cast<std::size_t>(b) * k;
        return std::lexicographical_compare(ra, ra + k, rb, rb + k);
    });

    // Group exact duplicates: equal dyads never dominate each other and share
    // a front with their representative.
    std::vector<double> unique_coords;
    unique_coords.reserve(coords.size());
    std::vector<std::uint32_t> unique_of(n);
    std::uint32_t uniques = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const double* row = pts + static_cast<std::size_t>(order[pos]) * k;
        const bool is_new =
            pos == 0 || !std::equal(row, row + k,
                                    unique_coords.data() + (uniques - 1) * k);
        if (is_new) {
            unique_coords.insert(unique_coords.end(), row, row + k);
            ++uniques;
        }
        unique_of[order[pos]] = uniques - 1;
    }

    JensenContext ctx;
    ctx.pts = unique_coords.data();
    ctx.width = k;
    ctx.front.assign(uniques, 0);

    std::vector<std::uint32_t> ids(uniques);
    std::iota(ids.begin(), ids.end(), 0);

    if (k == 1) {
        // Fronts of scalars are the ranks of the distinct values.
        for (std::uint32_t id = 0; id < uniques; ++id) ctx.front[id] = static_cast<int>(id);
    } else if (k == 2) {
        sort_2d(ctx, ids);
    } else {
        helper_a(ctx, ids, static_cast<int>(k) - 1);
    }

    std::vector<std::uint32_t> depths(n);
    for (std::size_t i = 0; i < n; ++i) {
        depths[i] = static_cast<std::uint32_t>(ctx.front[unique_of[i]]) + 1;
    }
    return depths;
}

std::vector<std::uint32_t> nondominated_depths(std::span<const double> coords,
                                               std::size_t n, std::size_t k,
                                               Sorter sorter) {
    return sorter == Sorter::deb ? deb_depths(coords, n, k) : jensen_depths(coords, n, k);
}

namespace {

FrontLedger ledger_from(const std::vector<Dyad>& dyads, Sorter sorter) {
    std::vector<double> flat = flatten_dyads(dyads);
    const std::size_t k = dyads.front().values.size();
    std::vector<std::uint32_t> depths = nondominated_depths(flat, dyads.size(), k, sorter);
    return FrontLedger::from_depths(std::move(flat), k, depths);
}

}  // namespace

FrontLedger sort_deb(const std::vector<Dyad>& dyads) { return ledger_from(dyads, Sorter::deb); }

FrontLedger sort_jensen(const std::vector<Dyad>& dyads) {
    return ledger_from(dyads, Sorter::jensen);
}

FrontLedger nondominated_sort(const std::vector<Dyad>& dyads, Sorter sorter) {
    return ledger_from(dyads, sorter);
}

Sorter sorter_from_string(std::string_view name) {
    if (name == "deb") return Sorter::deb;
    if (name == "jensen") return Sorter::jensen;
    throw std::invalid_argument("unknown sorter: " + std::string(name));
}

std::string_view to_string(Sorter sorter) {
    return sorter == Sorter::deb ? "deb" : "jensen";
}

}  // namespace pda
