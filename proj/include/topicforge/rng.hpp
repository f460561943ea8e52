#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace topicforge {

// Seeded random source for the samplers. std::mt19937_64 has a fully
// specified output sequence, and the draws below avoid std::*_distribution
// (whose algorithms are implementation-defined), so a seed pins the exact
// stream of samples on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint32_t uniform_below(std::uint32_t n) {
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() -
            std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return static_cast<std::uint32_t>(x % n);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace topicforge
