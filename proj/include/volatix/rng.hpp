#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace volatix {

// volatix-rng v1: xoshiro256** whose four state words are the first four
// outputs of SplitMix64. Stream `s` under seed `k` starts SplitMix64 at
// k ^ mix64(s + 1), so every journal index gets its own reproducible stream
// and generation order does not matter.
//
// Distributions are implemented here rather than with <random> so the same
// seed gives the same draws on every standard library.
class Rng {
public:
    static constexpr std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) {
            sm += 0x9E3779B97F4A7C15ull;
            word = mix64(sm);
        }
    }

    static Rng for_stream(std::uint64_t seed, std::uint64_t stream) { return Rng(seed ^ mix64(stream + 1)); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1).
    double uniform() { return (double(next() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes two uniforms per draw.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

}  // namespace volatix
