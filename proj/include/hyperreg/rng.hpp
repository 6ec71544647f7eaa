#pragma once

#include <cstdint>
#include <limits>

namespace hyperreg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stateless keyed draw: the value depends only on (seed, stream, index), so
/// draws can be taken in any order and from any thread.
constexpr std::uint64_t keyed_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    return mix64(mix64(mix64(seed) ^ stream) ^ index);
}

/// Uniform double in [0,1) from the top 53 bits.
constexpr double unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

constexpr double keyed_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    return unit_double(keyed_bits(seed, stream, index));
}

/// Sequential counter-based generator; satisfies UniformRandomBitGenerator.
/// `CounterRng(seed, stream)` instances with distinct streams are independent.
class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept : seed_(seed), stream_(stream) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept { return keyed_bits(seed_, stream_, counter_++); }

    constexpr double uniform() noexcept { return unit_double((*this)()); }

    /// Uniform integer in [0, bound); Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const auto x = (*this)();
            const auto m = static_cast<unsigned __int128>(x) * bound;
            if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    constexpr bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace hyperreg
