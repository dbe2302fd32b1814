// rng.hpp — SplitMix64 generator with counter-derived substreams, so
// per-sample draws are reproducible and independent of execution order.

#pragma once

#include <cstdint>

namespace qdchain {

// SplitMix64 (Steele, Lea, Flood 2014): state advances by the golden-gamma
// constant and each output is a finalizing hash of the state.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Substream for a counter (sample index): a generator seeded with the
    // hash of (seed, counter), so substreams can be created in any order.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t counter) {
        SplitMix64 mixer(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
        return SplitMix64(mixer.next());
    }

private:
    std::uint64_t state_;
};

}  // namespace qdchain
