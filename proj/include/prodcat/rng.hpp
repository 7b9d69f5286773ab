// Deterministic random variate helpers.
//
// std::mt19937_64 is bit-stable across platforms but the standard
// distributions are not, so every variate we need is derived here with
// explicit arithmetic. All generated corpora and random initializations
// depend only on the seed, not on the standard library build.

#pragma once

#include <cstdint>
#include <random>

namespace prodcat {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps
    // the draw unbiased.
    std::uint64_t uniform(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(uniform(n)); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace prodcat
