#pragma once

#include <cstdint>
#include <random>

namespace pda {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent seed for a numbered stream from a master seed.
// Used so that parallel trials are reproducible regardless of scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t state = master ^ (0x6a09e667f3bcc909ULL + stream * 0x3c6ef372fe94f82bULL);
    splitmix64(state);
    return splitmix64(state);
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t stream = 0) {
    return std::mt19937_64(derive_seed(master, stream));
}

}  // namespace pda
