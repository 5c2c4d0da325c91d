#pragma once

#include <cstdint>
#include <random>

namespace kbst {

std::uint64_t splitmix64(std::uint64_t x);

// mt19937_64 with a manual uniform mapping so streams are identical across
// standard library implementations.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    // [0,1)
    double uniform() { return (eng() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

}  // namespace kbst
