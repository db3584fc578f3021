#pragma once

#include <cstdint>
#include <random>

#include "permpoly/types.hpp"

namespace permpoly::rng {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent engine for sample `index` of a run keyed by `seed`. Every
// estimator derives its per-draw randomness this way, so results do not
// depend on how samples are distributed over worker threads.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = mix64(mix64(seed) + 0x632be59bd9b4e019ULL * (index + 1));
    return std::mt19937_64(key);
}

inline double gaussian(std::mt19937_64& eng) {
    std::normal_distribution<double> d(0.0, 1.0);
    return d(eng);
}

// Standard complex Gaussian, E|v|^2 = 1.
inline cplx complex_gaussian(std::mt19937_64& eng) {
    std::normal_distribution<double> d(0.0, 1.0);
    const double re = d(eng);
    const double im = d(eng);
    return cplx(re, im) / std::sqrt(2.0);
}

} // namespace permpoly::rng
