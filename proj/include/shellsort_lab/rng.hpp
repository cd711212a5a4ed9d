#pragma once

// Seedable, splittable 64-bit generator.
//
// The engine is xoshiro256** (Blackman and Vigna). Its 256-bit state is filled
// from a SplitMix64 sequence started at the seed. Substreams for trial t are
// seeded with mix64(seed ^ mix64(t + 1)), where mix64 is the SplitMix64
// output finalizer, so any trial can be replayed on its own.

#include <array>
#include <cstdint>
#include <limits>

namespace shellsort_lab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept;

    /// Generator for trial `index` of the experiment seeded with `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform integer in [0, bound) without modulo bias (Lemire's method).
    /// bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

}  // namespace shellsort_lab
