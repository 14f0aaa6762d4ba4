#pragma once

#include <cstdint>

namespace treeid {

// splitmix64; fixed algorithm so that sampled models are reproducible
// across platforms (std::uniform_int_distribution is not portable).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ULL - (~0ULL % bound);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

// Derive an independent seed stream; used to key PIT trials, verification
// models, and resampling retries off one master seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    SplitMix64 rng(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
    rng.next();
    return rng.next() ^ b;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

constexpr std::uint64_t kDefaultSeed = 0x7eedca5a1ULL;

}  // namespace treeid
