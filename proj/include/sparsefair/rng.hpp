#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sparsefair {

// All randomness in the library flows through this engine so that a single
// 64-bit seed reproduces byte-identical output on any platform:
//   * core generator: std::mt19937_64 (sequence fixed by the standard)
//   * uniform doubles: top 53 bits of one draw, giving [0,1)
//   * uniform integers: unbiased rejection sampling
//   * normals: Box-Muller on two uniform draws (no cached spare)
class rng {
public:
    explicit rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // [0, n), n >= 1
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return x % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal; consumes exactly two uniform draws
    double normal() {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 gen_;
};

// SplitMix64 step, used to decorrelate derived seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Deterministic per-trial substream seed; merging trial results in index
// order reproduces a single-threaded run.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

} // namespace sparsefair
