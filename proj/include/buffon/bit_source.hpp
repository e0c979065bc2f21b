#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>

namespace buffon {

/// Thrown by BitSource when a configured flip limit would be exceeded.
class FlipBudgetExceeded : public std::runtime_error {
public:
    FlipBudgetExceeded() : std::runtime_error("flip budget exceeded") {}
};

/// The single randomness primitive: a seeded, counting stream of unbiased bits.
///
/// Bits come from xoshiro256** seeded through splitmix64, so a given seed
/// yields the same bit stream on every platform. Each emitted bit bumps
/// flip_count() by exactly one; machines measure their cost as the
/// difference of two counts.
///
/// A BitSource is single-owner. Concurrent samplers each need their own.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed);

    /// One unbiased bit.
    bool flip();

    std::uint64_t flip_count() const noexcept { return count_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// Refuse to emit the bit that would push flip_count() past `limit`.
    /// flip() throws FlipBudgetExceeded instead.
    void set_limit(std::uint64_t limit) noexcept { limit_ = limit; }
    void clear_limit() noexcept { limit_ = std::numeric_limits<std::uint64_t>::max(); }

private:
    std::uint64_t next64() noexcept;

    std::uint64_t seed_;
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t buffer_ = 0;
    int buffered_ = 0;
    std::uint64_t count_ = 0;
    std::uint64_t limit_ = std::numeric_limits<std::uint64_t>::max();
};

inline BitSource make_source(std::uint64_t seed) { return BitSource(seed); }

/// Default seed: BUFFON_SEED from the environment when set and parseable, else `fallback`.
std::uint64_t default_seed(std::uint64_t fallback = 0x5eedULL);

/// Von Neumann's trick for a coin of unknown bias p in (0,1): toss twice,
/// 01 gives 0, 10 gives 1, anything else tosses again. The result is an
/// exactly fair bit.
template <typename BiasedCoin>
bool debiased_flip(BiasedCoin&& biased) {
    for (;;) {
        const bool first = biased();
        const bool second = biased();
        if (first != second) return first;
    }
}

}  // namespace buffon
