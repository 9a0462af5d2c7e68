#pragma once

#include <cstdint>
#include <random>

namespace parlives {

using Rng = std::mt19937_64;

/// Independent engine for work item `index` of a run seeded with `seed`.
/// std::seed_seq's mixing is fixed by the standard, so streams are identical
/// across platforms and independent of how work is split between threads.
inline Rng stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Uniform double in [0, 1) from the top 53 bits. Unlike
/// std::uniform_real_distribution the mapping is fully specified.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint8_t random_bit(Rng& rng) {
    return static_cast<std::uint8_t>(rng() >> 63);
}

}  // namespace parlives
