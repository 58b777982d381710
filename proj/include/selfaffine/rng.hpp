#pragma once

#include <cstdint>

namespace selfaffine {

/// Counter-based deterministic RNG (splitmix64). Every random draw in the
/// project flows from an explicit seed, so runs are reproducible regardless
/// of thread scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }

    /// Uniform integer in [0, n).
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(next_u32()) * n) >> 32);
    }

private:
    std::uint64_t state_;
};

/// Mixes several values into a single derived seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
    SplitMix64 g(a * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    std::uint64_t s = g.next_u64() ^ (b + 0x632be59bd9b4e019ULL);
    SplitMix64 h(s);
    s = h.next_u64() ^ (c * 0xff51afd7ed558ccdULL);
    SplitMix64 k(s);
    return k.next_u64() ^ (d * 0xc4ceb9fe1a85ec53ULL);
}

}  // namespace selfaffine
