#pragma once

#include <cstdint>
#include <optional>

namespace gnc {

struct RngSeed {
    std::uint64_t value = 0;

    friend bool operator==(RngSeed, RngSeed) = default;
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014; constants from Vigna's
/// reference implementation). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child seed for sub-stream `key` of `seed`. Used wherever independent,
/// order-free randomness is needed (channel trials, permutation sweeps).
constexpr RngSeed derive_seed(RngSeed seed, std::uint64_t key) noexcept {
    return RngSeed{splitmix64_mix(seed.value ^ splitmix64_mix(key + 0x9E3779B97F4A7C15ULL))};
}

/// Deterministic SplitMix64 stream.
///
/// Output is identical on every platform: the state advances by the golden
/// gamma 0x9E3779B97F4A7C15 and each output is splitmix64_mix(state).
///   uniform()  = (next() >> 11) * 2^-53, in [0, 1)
///   below(n)   = unbiased integer in [0, n) by rejection on the low range
///   normal()   = Box-Muller on (1 - uniform(), uniform()); the sine branch
///                is cached and returned by the following call.
class Rng {
public:
    explicit Rng(RngSeed seed) noexcept : state_(seed.value) {}

    std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    double uniform() noexcept;
    std::uint64_t below(std::uint64_t n);
    double normal() noexcept;

private:
    std::uint64_t state_;
    std::optional<double> spare_normal_;
};

}  // namespace gnc
