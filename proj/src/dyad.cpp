#include "pda/dyad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pda {

bool strictly_dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("strictly_dominates: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (a.empty()) throw std::invalid_argument("strictly_dominates: empty dyad");
    return dominates_row(a.data(), b.data(), a.size());
}

bool strictly_dominates(const Dyad& a, const Dyad& b) {
    return strictly_dominates(std::span<const double>(a.values),
                              std::span<const double>(b.values));
}

void validate_dyads(const std::vector<Dyad>& dyads) {
    if (dyads.empty()) throw std::invalid_argument("dyad list is empty");
    const std::size_t k = dyads.front().values.size();
    if (k == 0) throw std::invalid_argument("dyads must have at least one criterion");
    for (std::size_t i = 0; i < dyads.size(); ++i) {
        const Dyad& d = dyads[i];
        if (d.values.size() != k) {
            throw std::invalid_argument("dyad " + std::to_string(i) +
                                        " has mismatched criterion count");
        }
        for (double v : d.values) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("dyad " + std::to_string(i) +
                                            " has a non-finite or negative coordinate");
            }
        }
    }
}

std::vector<double> flatten_dyads(const std::vector<Dyad>& dyads) {
    validate_dyads(dyads);
    const std::size_t k = dyads.front().values.size();
    std::vector<double> flat;
    flat.reserve(dyads.size() * k);
    for (const Dyad& d : dyads) flat.insert(flat.end(), d.values.begin(), d.values.end());
    return flat;
}

}  // namespace pda
