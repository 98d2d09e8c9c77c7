#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tempo {

// All randomized code in this library draws through the helpers below on a
// std::mt19937_64 stream. std::uniform_int_distribution is avoided because
// its output is implementation-defined; these draws are reproducible for a
// given seed on any platform.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-stream seed from a base seed and up to two indices.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= b + 0x7f4a7c15b97f4a7cULL;
    h ^= splitmix64(s);
    return h;
}

// Unbiased draw in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x > limit);
    return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_real01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates shuffle on top of uniform_index.
template <typename T>
void shuffle_values(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace tempo
