#pragma once

#include <cstdint>
#include <random>

namespace piecut {

// All randomness in the library flows through seeded mt19937_64 engines so
// that every operation is reproducible from a single integer seed.
using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t seed) { return Rng(seed); }

// Derive an independent stream for a named sub-task. splitmix64 keeps
// nearby seeds decorrelated.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

inline double uniform_real(Rng& rng) {
    std::uniform_real_distribution<double> d(0.0, 1.0);
    return d(rng);
}

}  // namespace piecut
