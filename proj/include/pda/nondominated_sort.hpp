#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pda/dyad.hpp"
#include "pda/front_ledger.hpp"

namespace pda {

enum class Sorter { deb, jensen };

Sorter sorter_from_string(std::string_view name);
std::string_view to_string(Sorter sorter);

// 1-based Pareto depth of every row of an n x k row-major array.
//
// deb_depths peels fronts with pairwise domination counts (O(k n^2)
// comparisons, O(n) extra memory). jensen_depths is the divide-and-conquer
// sort (O(n log^{k-1} n) comparisons) with duplicate grouping; it must produce
// exactly the same depths as deb_depths, which is kept as the oracle.
std::vector<std::uint32_t> deb_depths(std::span<const double> coords, std::size_t n,
                                      std::size_t k);
std::vector<std::uint32_t> jensen_depths(std::span<const double> coords, std::size_t n,
                                         std::size_t k);
std::vector<std::uint32_t> nondominated_depths(std::span<const double> coords,
                                               std::size_t n, std::size_t k,
                                               Sorter sorter);

FrontLedger sort_deb(const std::vector<Dyad>& dyads);
FrontLedger sort_jensen(const std::vector<Dyad>& dyads);
FrontLedger nondominated_sort(const std::vector<Dyad>& dyads, Sorter sorter);

}  // namespace pda
