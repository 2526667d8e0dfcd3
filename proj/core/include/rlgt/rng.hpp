#pragma once

// Deterministic, platform-independent randomness.
//
// Every random object in this library is derived from a 64-bit master seed
// through an explicit avalanche mix, never from global state, so any result
// can be reproduced bit-for-bit from (parameters, seed) alone regardless of
// thread count or evaluation order.
//
// Generator: xoshiro256** (Blackman & Vigna), seeded via splitmix64.
// Substreams: derive_seed(master, index) feeds the index through two rounds
// of the splitmix64 finalizer so that adjacent indices yield decorrelated
// streams.

#include <array>
#include <cstdint>

namespace rlgt {

/// splitmix64 finalizer: a 64-bit avalanche mix.  Used both to expand seeds
/// into generator state and to derive per-column / per-trial substreams.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic substream derivation: same (master, index) gives the same
/// stream on every platform; different indices give independent-looking
/// streams.  Streams are decoupled from iteration order, which is what makes
/// parallel generation reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index));
}

/// xoshiro256** engine with rejection-sampled bounded draws.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t seed) {
        // Expand the seed with splitmix64 as the xoshiro authors recommend.
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = s;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
    }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw from [0, bound); unbiased via rejection.  bound must be
    /// nonzero.
    constexpr std::uint64_t below(std::uint64_t bound) {
        // Reject draws above the largest multiple of bound.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Bernoulli(p) draw.
    constexpr bool bernoulli(double p) { return unit() < p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int s) {
        return (x << s) | (x >> (64 - s));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace rlgt
