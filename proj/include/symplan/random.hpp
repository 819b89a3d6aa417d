#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace symplan {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent child seed for (seed, stream...). Used wherever a
/// deterministic per-cell / per-episode / per-step stream is needed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams) {
    std::uint64_t z = mix64(seed);
    for (std::uint64_t s : streams) z = mix64(z ^ mix64(s + 0x632be59bd9b4e019ULL));
    return z;
}

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace symplan
