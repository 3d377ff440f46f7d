#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace msyds {

/// The one seedable generator used by every stochastic operation in the
/// library. Callers pass it explicitly so experiments are replayable.
/// Monte-Carlo drivers derive per-trial generators as Rng(base_seed + trial).
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
/// Hand-rolled (instead of std::uniform_real_distribution) so that output
/// streams are identical across standard library implementations.
inline double rand_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// True with probability p.
inline bool rand_bernoulli(Rng& rng, double p) {
    return rand_unit(rng) < p;
}

/// Uniform integer in [0, bound). Rejection sampling keeps it unbiased.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("rand_below: bound must be positive");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t x = rng();
    while (x >= limit)
        x = rng();
    return x % bound;
}

/// Uniform integer in [lo, hi], inclusive.
inline int rand_int(Rng& rng, int lo, int hi) {
    if (lo > hi)
        throw std::invalid_argument("rand_int: empty range");
    return lo + static_cast<int>(rand_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace msyds
