#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ulindley {

// mt19937_64 output is fixed by the standard; the conversions below are
// written out so draws are identical across standard library vendors.
using Rng = std::mt19937_64;

/// Uniform on the open interval (0,1) with 53 random bits.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Exponential with the given rate; strictly positive.
inline double exponential(Rng& rng, double rate) {
    return -std::log(uniform_open01(rng)) / rate;
}

/// splitmix64 finalizer. A bijection on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace ulindley
