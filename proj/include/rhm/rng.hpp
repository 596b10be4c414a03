#pragma once

#include <cstdint>
#include <random>

namespace rhm {

using Rng = std::mt19937_64;

/// splitmix64 step; used to derive well-separated per-replicate seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seed for stream `index` of a master seed. Streams are
/// independent of the order in which they are consumed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (index + 1);
    return splitmix64(s);
}

/// Uniform double in [0,1) from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace rhm
