#pragma once

#include <cstdint>

namespace lsc {

// splitmix64 (Vigna, public domain reference implementation). Used for every
// seeded random choice in the library so streams are reproducible across
// platforms. Not cryptographic.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform value in [0, q) by rejection: words >= floor(2^64/q)*q are
    // discarded, the rest reduced mod q. When q divides 2^64 nothing is
    // rejected.
    std::uint32_t next_below(std::uint32_t q) {
        const std::uint64_t rem = (UINT64_MAX % q + 1) % q;  // 2^64 mod q
        for (;;) {
            std::uint64_t w = next();
            if (rem != 0 && w >= std::uint64_t(0) - rem) continue;
            return static_cast<std::uint32_t>(w % q);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace lsc
