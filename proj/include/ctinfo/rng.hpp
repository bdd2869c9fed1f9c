#pragma once

#include <cstdint>
#include <random>

namespace ctinfo {

// splitmix64 finalizer; decorrelates adjacent seed values.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-replication stream: seed XOR replication index, then mixed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t replication) {
    return mix64(seed ^ replication);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix64(seed));
}

// Uniform double in [0,1) with a fully specified bit mapping, so sampled
// streams are byte-identical across platforms (uniform_real_distribution is not).
inline double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace ctinfo
