#pragma once

#include <cstdint>
#include <random>

namespace bergman {

/// Seeded mt19937_64 with explicit bit-level conversions so that sampled
/// sequences are identical across standard library implementations (the
/// std::uniform_* distributions are not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    uint64_t uniform_int(uint64_t n) {
        // Rejection to avoid modulo bias.
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace bergman
