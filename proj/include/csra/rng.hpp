#pragma once

#include <cstdint>
#include <random>

namespace csra {

using rng_t = std::mt19937_64;

// Finalizer from the splitmix64 generator; full 64-bit avalanche.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic substream seed for (master, index) pairs. Indices with the
// same master never collide in practice; nested calls derive deeper streams.
inline std::uint64_t derive_stream(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
}

inline rng_t make_rng(std::uint64_t seed) { return rng_t(seed); }

}  // namespace csra
