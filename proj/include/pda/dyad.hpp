#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pda {

// Marker used as the `left` index of dyads between a test sample and a
// training sample.
inline constexpr std::int32_t kTestSample = -1;

// A dyad holds the per-criterion dissimilarities between a pair of samples.
// All coordinates are finite and nonnegative; the vector length is the
// criterion count K of the containing collection.
struct Dyad {
    std::vector<double> values;
    std::int32_t left = kTestSample;
    std::int32_t right = kTestSample;
};

// True iff a <= b in every coordinate and a < b in at least one.
// Comparisons are exact; equal dyads never dominate each other.
bool strictly_dominates(std::span<const double> a, std::span<const double> b);
bool strictly_dominates(const Dyad& a, const Dyad& b);

// Dominance for packed rows of known width; no dimension check.
inline bool dominates_row(const double* a, const double* b, std::size_t k) {
    bool strict = false;
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

// 0 = incomparable or equal, 1 = a dominates b, 2 = b dominates a.
inline int dominance_compare(const double* a, const double* b, std::size_t k) {
    bool a_le = true;
    bool b_le = true;
    bool a_lt = false;
    bool b_lt = false;
    for (std::size_t i = 0; i < k; ++i) {
        if (a[i] < b[i]) {
            b_le = false;
            a_lt = true;
        } else if (a[i] > b[i]) {
            a_le = false;
            b_lt = true;
        }
        if (!a_le && !b_le) return 0;
    }
    if (a_le && a_lt) return 1;
    if (b_le && b_lt) return 2;
    return 0;
}

// Throws std::invalid_argument unless the list is nonempty with uniform K >= 1
// and every coordinate finite and >= 0.
void validate_dyads(const std::vector<Dyad>& dyads);

// Flatten dyad values into an n x k row-major array (validates first).
std::vector<double> flatten_dyads(const std::vector<Dyad>& dyads);

}  // namespace pda
