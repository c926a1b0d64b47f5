#include "pda/gap_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pda/dyad.hpp"
#include "pda/lp.hpp"
#include "pda/parallel.hpp"
#include "pda/rng.hpp"
#include "pda/synthgen.hpp"

namespace pda {

std::vector<std::uint32_t> first_front(std::span<const double> points, std::size_t n,
                                       std::size_t d) {
    if (n == 0 || d == 0) throw std::invalid_argument("first_front: empty input");
    if (points.size() != n * d) throw std::invalid_argument("first_front: size mismatch");

    // Process by ascending coordinate sum: any strict dominator has a strictly
    // smaller sum, and by transitivity it suffices to test against the current
    // front members.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) sums[i] += points[i * d + j];
    }
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (sums[a] != sums[b]) return sums[a] < sums[b];
        return a < b;
    });

    std::vector<std::uint32_t> front;
    std::vector<double> front_coords;  // packed copies for cache locality
    for (std::uint32_t id : order) {
        const double* p = points.data() + std::size_t(id) * d;
        bool dominated = false;
        const std::size_t count = front.size();
        for (std::size_t f = 0; f < count; ++f) {
            if (dominates_row(front_coords.data() + f * d, p, d)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            front.push_back(id);
            front_coords.insert(front_coords.end(), p, p + d);
        }
    }
    std::sort(front.begin(), front.end());
    return front;
}

std::size_t first_front_size(std::span<const double> points, std::size_t n,
                             std::size_t d) {
    return first_front(points, n, d).size();
}

namespace {

// Unique rows of the front with multiplicities, preserving a map back to the
// original candidate order.
struct UniqueFront {
    std::vector<double> coords;           // u x d
    std::vector<std::uint32_t> unique_of;  // per original index
    std::size_t uniques = 0;
};

UniqueFront unique_front(std::span<const double> front, std::size_t m, std::size_t d) {
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const double* ra = front.data() + std::size_t(a) * d;
        const double* rb = front.data() + std::size_t(b) * d;
        return std::lexicographical_compare(ra, ra + d, rb, rb + d);
    });
    UniqueFront out;
    out.unique_of.resize(m);
    for (std::size_t pos = 0; pos < m; ++pos) {
        const double* row = front.data() + std::size_t(order[pos]) * d;
        const bool is_new =
            pos == 0 ||
            !std::equal(row, row + d, out.coords.data() + (out.uniques - 1) * d);
        if (is_new) {
            out.coords.insert(out.coords.end(), row, row + d);
            ++out.uniques;
        }
        out.unique_of[order[pos]] = static_cast<std::uint32_t>(out.uniques - 1);
    }
    return out;
}

// Feasibility margin of max_alpha min_y alpha . (y - x) over the simplex,
// solved as: maximize t' subject to t' - alpha . (y - x)/scale <= 1,
// sum alpha = 1, alpha >= 0, t' >= 0; margin = t'* - 1.
double scalarizable_margin(const UniqueFront& uf, std::size_t candidate, std::size_t d) {
    const double* x = uf.coords.data() + candidate * d;

    double scale = 0.0;
    for (std::size_t u = 0; u < uf.uniques; ++u) {
        if (u == candidate) continue;
        const double* y = uf.coords.data() + u * d;
        for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(y[j] - x[j]));
    }
    if (scale == 0.0) return 1.0;  // every other point equals x

    std::vector<std::vector<double>> a;
    std::vector<double> b;
    a.reserve(uf.uniques + 1);
    for (std::size_t u = 0; u < uf.uniques; ++u) {
        if (u == candidate) continue;
        const double* y = uf.coords.data() + u * d;
        std::vector<double> row(d + 1);
        for (std::size_t j = 0; j < d; ++j) row[j] = -(y[j] - x[j]) / scale;
        row[d] = 1.0;
        a.push_back(std::move(row));
        b.push_back(1.0);
    }
    std::vector<double> ones(d + 1, 1.0);
    ones[d] = 0.0;
    a.push_back(ones);
    b.push_back(1.0);
    for (auto& v : ones) v = -v;
    a.push_back(ones);
    b.push_back(-1.0);

    std::vector<double> c(d + 1, 0.0);
    c[d] = 1.0;

    SimplexLp lp(a, b, c);
    std::vector<double> solution;
    const double value = lp.solve(solution);
    if (lp.iterations_exhausted() || !std::isfinite(value)) {
        return 0.0;  // treated as ambiguous by the caller
    }
    return value - 1.0;
}

}  // namespace

std::vector<Scalarizable> scalarizable_subset_lp(std::span<const double> front,
                                                 std::size_t m, std::size_t d,
                                                 double tol) {
    if (m == 0 || d == 0) throw std::invalid_argument("scalarizable_subset: empty front");
    if (front.size() != m * d) {
        throw std::invalid_argument("scalarizable_subset: size mismatch");
    }
    const UniqueFront uf = unique_front(front, m, d);

    // Per-coordinate minima; attaining one makes the candidate reachable with
    // a one-hot weight (tied minimizers included).
    std::vector<double> min_coord(d, std::numeric_limits<double>::infinity());
    for (std::size_t u = 0; u < uf.uniques; ++u) {
        for (std::size_t j = 0; j < d; ++j) {
            min_coord[j] = std::min(min_coord[j], uf.coords[u * d + j]);
        }
    }

    std::vector<Scalarizable> unique_status(uf.uniques, Scalarizable::no);
    for (std::size_t u = 0; u < uf.uniques; ++u) {
        bool coord_min = false;
        for (std::size_t j = 0; j < d; ++j) {
            if (uf.coords[u * d + j] == min_coord[j]) {
                coord_min = true;
                break;
            }
        }
        if (coord_min) {
            unique_status[u] = Scalarizable::yes;
            continue;
        }
        const double margin = scalarizable_margin(uf, u, d);
        if (margin > tol) {
            unique_status[u] = Scalarizable::yes;
        } else if (margin < -tol) {
            unique_status[u] = Scalarizable::no;
        } else {
            unique_status[u] = Scalarizable::ambiguous;
        }
    }

    std::vector<Scalarizable> status(m);
    for (std::size_t i = 0; i < m; ++i) status[i] = unique_status[uf.unique_of[i]];
    return status;
}

std::vector<std::uint8_t> scalarizable_subset_chain2d(std::span<const double> front,
                                                      std::size_t m) {
    if (m == 0) throw std::invalid_argument("scalarizable_subset_chain2d: empty front");
    if (front.size() != m * 2) {
        throw std::invalid_argument("scalarizable_subset_chain2d: not a 2D front");
    }
    const UniqueFront uf = unique_front(front, m, 2);
    const std::size_t u = uf.uniques;

    // Unique front points sorted by x ascending (lexicographic sort above);
    // on an antichain y is then strictly decreasing. Build the lower-left
    // convex chain keeping collinear points (tied minimizers).
    std::vector<std::uint32_t> chain;
    auto cross = [&](std::uint32_t o, std::uint32_t a, std::uint32_t b) {
        const double ox = uf.coords[o * 2], oy = uf.coords[o * 2 + 1];
        const double ax = uf.coords[a * 2], ay = uf.coords[a * 2 + 1];
        const double bx = uf.coords[b * 2], by = uf.coords[b * 2 + 1];
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
    };
    for (std::uint32_t id = 0; id < u; ++id) {
        while (chain.size() >= 2 &&
               cross(chain[chain.size() - 2], chain[chain.size() - 1], id) < 0.0) {
            chain.pop_back();
        }
        chain.push_back(id);
    }

    std::vector<std::uint8_t> on_chain(u, 0);
    for (std::uint32_t id : chain) on_chain[id] = 1;
    std::vector<std::uint8_t> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = on_chain[uf.unique_of[i]];
    return out;
}

SubsetCount scalarizable_count(std::span<const double> front, std::size_t m,
                               std::size_t d, double tol) {
    const auto status = scalarizable_subset_lp(front, m, d, tol);
    std::vector<std::uint8_t> chain;
    if (d == 2) chain = scalarizable_subset_chain2d(front, m);

    SubsetCount result;
    for (std::size_t i = 0; i < m; ++i) {
        switch (status[i]) {
            case Scalarizable::yes:
                ++result.count;
                break;
            case Scalarizable::ambiguous:
                ++result.flagged;
                // Resolved by the chain in 2D, conservative otherwise.
                if (d == 2 && chain[i]) ++result.count;
                break;
            case Scalarizable::no:
                break;
        }
    }
    return result;
}

double c_nd(double n, int d) {
    if (n < 2.0) throw std::invalid_argument("c_nd: n must be >= 2");
    if (d < 1) throw std::invalid_argument("c_nd: d must be >= 1");
    double factorial = 1.0;
    for (int i = 2; i < d; ++i) factorial *= i;
    return std::pow(std::log(n), d - 1) / factorial;
}

double harmonic_number(std::size_t n) {
    double h = 0.0;
    for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
    return h;
}

namespace {

// Integrand after x = exp(-v): v^{d-1} (1 - e^{-v})^{n-1} e^{-v} on [0, inf).
double kn_integrand(double v, double n, int d) {
    if (v <= 0.0) return d == 1 && n == 1.0 ? 1.0 : 0.0;
    double log_term = 0.0;
    if (n > 1.0) {
        const double em = std::exp(-v);
        if (em >= 1.0) return 0.0;
        log_term = (n - 1.0) * std::log1p(-em);
    }
    const double log_f = (d - 1) * std::log(v) + log_term - v;
    return std::exp(log_f);
}

struct QuadState {
    double n;
    int d;
    double worst_error = 0.0;
    long evaluations = 0;
};

double adaptive_simpson(QuadState& state, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = kn_integrand(lm, state.n, state.d);
    const double frm = kn_integrand(rm, state.n, state.d);
    state.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        state.worst_error = std::max(state.worst_error, std::abs(delta) / 15.0);
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(state, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(state, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace

double expected_kn_uniform(double n, int d, double rel_tol) {
    if (n < 1.0) throw std::invalid_argument("expected_kn_uniform: n must be >= 1");
    if (d < 1) throw std::invalid_argument("expected_kn_uniform: d must be >= 1");
    if (d == 1) return 1.0;
    if (n == 1.0) return 1.0;

    const double vmax = std::log(n) + 80.0;
    // Rough scale of the integral for the absolute tolerance: the mass sits
    // near v = ln n where the integrand is about v^{d-1} e^{-v} * const.
    const double scale = std::max(std::tgamma(static_cast<double>(d)) / n, 1e-300);
    const double abs_tol = rel_tol * scale;

    QuadState state{n, d, 0.0, 0};
    const double a = 0.0, b = vmax;
    const double fa = kn_integrand(a, n, d);
    const double fb = kn_integrand(b, n, d);
    const double fm = kn_integrand(0.5 * (a + b), n, d);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double integral = adaptive_simpson(state, a, b, fa, fm, fb, whole, abs_tol, 48);

    double factorial = 1.0;
    for (int i = 2; i < d; ++i) factorial *= i;
    const double result = n / factorial * integral;

    if (state.worst_error > 64.0 * abs_tol) {
        throw std::runtime_error("expected_kn_uniform: quadrature reached tolerance " +
                                 std::to_string(state.worst_error) + " (requested " +
                                 std::to_string(abs_tol) + ")");
    }
    return result;
}

GapGenerator gap_generator_from_string(std::string_view name) {
    if (name == "uniform") return GapGenerator::iid_uniform;
    if (name == "linear") return GapGenerator::iid_linear;
    if (name == "dyads") return GapGenerator::dyads;
    throw std::invalid_argument("unknown gap generator: " + std::string(name));
}

std::string_view to_string(GapGenerator gen) {
    switch (gen) {
        case GapGenerator::iid_uniform: return "uniform";
        case GapGenerator::iid_linear: return "linear";
        case GapGenerator::dyads: return "dyads";
    }
    return "?";
}

std::size_t points_for_dyads(std::size_t n_target) {
    const double root = (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(n_target))) / 2.0;
    std::size_t n = static_cast<std::size_t>(std::ceil(root));
    while (n * (n - 1) / 2 < n_target) ++n;
    while (n > 2 && (n - 1) * (n - 2) / 2 >= n_target) --n;
    return n;
}

GapTrial run_gap_trial(std::size_t n_target, int d, GapGenerator generator,
                       std::uint64_t seed, double tol, TrialAccounting* accounting) {
    if (d < 1) throw std::invalid_argument("run_gap_trial: d must be >= 1");
    GapTrial trial;
    trial.d = d;
    trial.seed = seed;

    std::vector<double> cloud;
    switch (generator) {
        case GapGenerator::iid_uniform:
            cloud = gen_uniform_points(n_target, d, seed);
            trial.n = n_target;
            break;
        case GapGenerator::iid_linear:
            cloud = gen_linear_density_points(n_target, d, seed);
            trial.n = n_target;
            break;
        case GapGenerator::dyads: {
            const std::size_t points = points_for_dyads(n_target);
            const auto raw = gen_uniform_points(points, d, seed);
            cloud = points_to_dyads(raw, points, d);
            trial.n = points * (points - 1) / 2;
            break;
        }
    }

    const auto front = first_front(cloud, trial.n, d);
    trial.kn = front.size();

    std::vector<double> front_coords(front.size() * d);
    for (std::size_t f = 0; f < front.size(); ++f) {
        std::copy_n(cloud.begin() + std::size_t(front[f]) * d, d,
                    front_coords.begin() + f * d);
    }
    const SubsetCount subset = scalarizable_count(front_coords, front.size(), d, tol);
    trial.ln = subset.count;
    if (accounting) {
        accounting->flagged += subset.flagged;
        accounting->candidates += front.size();
    }
    return trial;
}

namespace {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(std::span<const double> values) {
    MeanSe out;
    const double n = static_cast<double>(values.size());
    for (double v : values) out.mean += v;
    out.mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = values.size() > 1 ? std::sqrt(ss / n) / std::sqrt(n) : 0.0;
    return out;
}

}  // namespace

GapGrowthResult run_gap_growth(const GapGrowthConfig& cfg) {
    if (cfg.n_grid.empty()) throw std::invalid_argument("run_gap_growth: empty n grid");
    if (cfg.realizations < 1) {
        throw std::invalid_argument("run_gap_growth: realizations must be >= 1");
    }
    if (!std::is_sorted(cfg.n_grid.begin(), cfg.n_grid.end())) {
        throw std::invalid_argument("run_gap_growth: n grid must be ascending");
    }

    GapGrowthResult result;
    result.rows.resize(cfg.n_grid.size());

    const std::size_t total = cfg.n_grid.size() * static_cast<std::size_t>(cfg.realizations);
    std::vector<GapTrial> trials(total);
    std::vector<TrialAccounting> notes(total);
    parallel_for(total, cfg.threads, [&](std::size_t t) {
        const std::size_t grid_idx = t / cfg.realizations;
        trials[t] = run_gap_trial(cfg.n_grid[grid_idx], cfg.d, cfg.generator,
                                  derive_seed(cfg.seed, t), cfg.lp_tol, &notes[t]);
    });
    for (const auto& n : notes) {
        result.accounting.flagged += n.flagged;
        result.accounting.candidates += n.candidates;
    }

    std::vector<double> log_n, mean_gap;
    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
        std::vector<double> gaps(cfg.realizations);
        for (int r = 0; r < cfg.realizations; ++r) {
            const GapTrial& trial = trials[g * cfg.realizations + r];
            gaps[r] = static_cast<double>(trial.kn) - static_cast<double>(trial.ln);
        }
        const MeanSe stat = mean_se(gaps);
        result.rows[g] = {trials[g * cfg.realizations].n, stat.mean, stat.se,
                          cfg.realizations};
        log_n.push_back(std::log(static_cast<double>(result.rows[g].n)));
        mean_gap.push_back(stat.mean);
    }

    // Model y = alpha ln n, fitted through the origin and with an intercept.
    double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    const double count = static_cast<double>(log_n.size());
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * mean_gap[i];
        sx += log_n[i];
        sy += mean_gap[i];
    }
    result.alpha_no_intercept = sxy / sxx;
    const double denom = count * sxx - sx * sx;
    if (denom != 0.0) {
        result.alpha_with_intercept = (count * sxy - sx * sy) / denom;
        result.intercept = (sy - result.alpha_with_intercept * sx) / count;
    } else {
        result.alpha_with_intercept = result.alpha_no_intercept;
        result.intercept = 0.0;
    }
    return result;
}

GapDimsResult run_gap_dims(const GapDimsConfig& cfg) {
    if (cfg.dims.empty()) throw std::invalid_argument("run_gap_dims: empty dimension list");
    GapDimsResult result;
    result.rows.resize(cfg.dims.size());

    const std::size_t total = cfg.dims.size() * static_cast<std::size_t>(cfg.realizations);
    std::vector<GapTrial> trials(total);
    std::vector<TrialAccounting> notes(total);
    parallel_for(total, cfg.threads, [&](std::size_t t) {
        const std::size_t dim_idx = t / cfg.realizations;
        trials[t] = run_gap_trial(cfg.n_target, cfg.dims[dim_idx], cfg.generator,
                                  derive_seed(cfg.seed, t), cfg.lp_tol, &notes[t]);
    });
    for (const auto& n : notes) {
        result.accounting.flagged += n.flagged;
        result.accounting.candidates += n.candidates;
    }

    for (std::size_t g = 0; g < cfg.dims.size(); ++g) {
        const int d = cfg.dims[g];
        const std::size_t n = trials[g * cfg.realizations].n;
        const double c = c_nd(static_cast<double>(n), d);
        std::vector<double> ratios(cfg.realizations);
        for (int r = 0; r < cfg.realizations; ++r) {
            const GapTrial& trial = trials[g * cfg.realizations + r];
            ratios[r] = (static_cast<double>(trial.kn) - static_cast<double>(trial.ln)) / c;
        }
        const MeanSe stat = mean_se(ratios);
        double d_fact = 1.0, d_pow = 1.0;
        for (int i = 1; i <= d; ++i) {
            d_fact *= i;
            d_pow *= d;
        }
        result.rows[g] = {d,
                          n,
                          stat.mean,
                          stat.se,
                          (d - 1.0) / (4.0 * d - 2.0),
                          1.0 - d_fact / d_pow};
    }
    return result;
}

KnOracleResult run_kn_oracle(const KnOracleConfig& cfg) {
    if (cfg.realizations < 1) {
        throw std::invalid_argument("run_kn_oracle: realizations must be >= 1");
    }
    std::vector<double> sizes(cfg.realizations);
    parallel_for(cfg.realizations, cfg.threads, [&](std::size_t t) {
        const std::uint64_t seed = derive_seed(cfg.seed, t);
        const auto cloud = cfg.linear_density
                               ? gen_linear_density_points(cfg.n, cfg.d, seed)
                               : gen_uniform_points(cfg.n, cfg.d, seed);
        sizes[t] = static_cast<double>(first_front_size(cloud, cfg.n, cfg.d));
    });
    const MeanSe stat = mean_se(sizes);
    KnOracleResult result;
    result.mean_kn = stat.mean;
    result.se = stat.se;
    result.expected_uniform = expected_kn_uniform(static_cast<double>(cfg.n), cfg.d);
    result.c_nd_value = c_nd(static_cast<double>(cfg.n), cfg.d);
    return result;
}

}  // namespace pda
