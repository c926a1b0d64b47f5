#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pda {

// --- First Pareto front of a point cloud ---------------------------------------

// Indices (ascending) of the points not strictly dominated by any other point.
std::vector<std::uint32_t> first_front(std::span<const double> points, std::size_t n,
                                       std::size_t d);
std::size_t first_front_size(std::span<const double> points, std::size_t n,
                             std::size_t d);

// --- Scalarizable subset L^n ----------------------------------------------------

// Classification of each front point: reachable by some nonnegative weight
// vector (yes), unreachable (no), or numerically on the boundary (ambiguous).
enum class Scalarizable : std::uint8_t { no = 0, yes = 1, ambiguous = 2 };

inline constexpr double kLpTolerance = 1e-9;

// LP feasibility per candidate: x is scalarizable iff some simplex weight
// alpha satisfies alpha . x <= alpha . y for every front point y (ties kept,
// per the non-strict argmin). `front` must be the exact first front.
std::vector<Scalarizable> scalarizable_subset_lp(std::span<const double> front,
                                                 std::size_t m, std::size_t d,
                                                 double tol = kLpTolerance);

// d = 2 alternative: the lower-left convex chain of the front staircase,
// collinear points kept. Must agree with the LP route.
std::vector<std::uint8_t> scalarizable_subset_chain2d(std::span<const double> front,
                                                      std::size_t m);

struct SubsetCount {
    std::size_t count = 0;    // |L^n| after resolving ambiguous candidates
    std::size_t flagged = 0;  // candidates in the ambiguous band
};

// |L^n| with ambiguous candidates resolved by the 2D chain when d == 2 and
// counted as non-scalarizable otherwise.
SubsetCount scalarizable_count(std::span<const double> front, std::size_t m,
                               std::size_t d, double tol = kLpTolerance);

// --- Asymptotic oracles ---------------------------------------------------------

// c_{n,d} = (ln n)^{d-1} / (d-1)!
double c_nd(double n, int d);

// E(K_n) for i.i.d. uniform points on [0,1]^d:
//   n/(d-1)! * Integral_0^1 (1-x)^{n-1} (-ln x)^{d-1} dx
// by adaptive quadrature. Throws when the requested tolerance is not reached.
double expected_kn_uniform(double n, int d, double rel_tol = 1e-10);

double harmonic_number(std::size_t n);

// --- Monte Carlo experiments ------------------------------------------------------

enum class GapGenerator { iid_uniform, iid_linear, dyads };

GapGenerator gap_generator_from_string(std::string_view name);
std::string_view to_string(GapGenerator gen);

// One realization: (n, d, K_n, L_n) for the given generator and seed.
struct GapTrial {
    std::size_t n = 0;
    int d = 0;
    std::size_t kn = 0;
    std::size_t ln = 0;
    std::uint64_t seed = 0;
};

struct TrialAccounting {
    std::size_t flagged = 0;
    std::size_t candidates = 0;
};

GapTrial run_gap_trial(std::size_t n_target, int d, GapGenerator generator,
                       std::uint64_t seed, double tol = kLpTolerance,
                       TrialAccounting* accounting = nullptr);

// Number of points generating at least n_target dyads (C(N,2) >= n_target).
std::size_t points_for_dyads(std::size_t n_target);

// K_n - L_n growth in n at fixed d, with the log-fit alpha reported both for
// the stated model y = alpha ln n and with an intercept.
struct GapGrowthConfig {
    int d = 2;
    std::vector<std::size_t> n_grid;
    int realizations = 100;
    GapGenerator generator = GapGenerator::dyads;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double lp_tol = kLpTolerance;
};

struct GapGrowthRow {
    std::size_t n = 0;  // realized dyad count
    double mean_gap = 0.0;
    double se = 0.0;
    int realizations = 0;
};

struct GapGrowthResult {
    std::vector<GapGrowthRow> rows;
    double alpha_no_intercept = 0.0;
    double alpha_with_intercept = 0.0;
    double intercept = 0.0;
    TrialAccounting accounting;
};

GapGrowthResult run_gap_growth(const GapGrowthConfig& cfg);

// (K_n - L_n)/c_{n,d} versus dimension at fixed n, with the asymptotic bounds.
struct GapDimsConfig {
    std::vector<int> dims = {2, 3, 4, 5};
    std::size_t n_target = 100128;
    int realizations = 200;
    GapGenerator generator = GapGenerator::dyads;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    double lp_tol = kLpTolerance;
};

struct GapDimsRow {
    int d = 0;
    std::size_t n = 0;
    double mean_ratio = 0.0;
    double se = 0.0;
    double lower_bound = 0.0;  // (d-1)/(4d-2)
    double upper_bound = 0.0;  // 1 - d!/d^d
};

struct GapDimsResult {
    std::vector<GapDimsRow> rows;
    TrialAccounting accounting;
};

GapDimsResult run_gap_dims(const GapDimsConfig& cfg);

// Monte Carlo check of the E(K_n) oracle for uniform or linear density.
struct KnOracleConfig {
    std::size_t n = 1000;
    int d = 2;
    int realizations = 500;
    bool linear_density = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct KnOracleResult {
    double mean_kn = 0.0;
    double se = 0.0;
    double expected_uniform = 0.0;  // quadrature oracle
    double c_nd_value = 0.0;
};

KnOracleResult run_kn_oracle(const KnOracleConfig& cfg);

}  // namespace pda
