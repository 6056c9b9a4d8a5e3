#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

// Seeded, portable random number generation. Every random choice in the
// library flows through the generators defined here, so a given seed
// reproduces bit-identical results on any platform and compiler.
//
// Algorithms (both public-domain reference designs):
//   * SplitMix64 (Steele/Lea/Vigna) for seed mixing and stream splitting.
//   * xoshiro256** 1.0 (Blackman/Vigna) as the main engine, seeded from
//     four consecutive SplitMix64 outputs.
// Bounded integers use rejection sampling, doubles use the top 53 bits.

namespace cyclecover {

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += kSplitMix64Gamma);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// derive_seed(seed, k) is the (k+1)-th output of the SplitMix64 stream
/// started at `seed`. Independent sub-streams (noise sampling, annealing
/// shots, experiment repetitions) are split with this function, so their
/// results do not depend on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t state = seed + index * kSplitMix64Gamma;
    return splitmix64_next(state);
}

/// xoshiro256** engine. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
  public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept : state_{} {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    constexpr result_type operator()() noexcept {
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

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

/// Unbiased integer in [0, n). Rejects draws below 2^64 mod n.
inline std::uint64_t uniform_below(Xoshiro256& rng, std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

/// Uniform double in [0, 1) with 53 random mantissa bits.
inline double uniform_unit(Xoshiro256& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Fisher-Yates shuffle driven by the engine above.
template <typename T>
void shuffle_in_place(std::vector<T>& values, Xoshiro256& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::uint64_t j = uniform_below(rng, i);
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace cyclecover
