#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace polarlist {

using RngEngine = std::mt19937_64;

/// splitmix64 step; good enough to whiten (seed, index) pairs into
/// independent engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Independent engine for stream `index` under `master_seed`. Trials and
/// sweep cells each get their own stream, so results are reproducible no
/// matter how work is scheduled across threads.
inline RngEngine substream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t s = master_seed ^ (0xD1B54A32D192ED03ull * (index + 1));
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return RngEngine(seq);
}

/// Uniform draw in (0, 1]; fixed arithmetic instead of
/// std::uniform_real_distribution so streams are identical across standard
/// library implementations.
inline double uniform01(RngEngine& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1p-53;
}

/// Standard normal via Box-Muller (cosine branch only, no cached spare).
inline double gaussian(RngEngine& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Fair bit.
inline std::uint8_t random_bit(RngEngine& rng) { return static_cast<std::uint8_t>(rng() & 1u); }

}  // namespace polarlist
