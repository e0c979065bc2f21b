#include "buffon/bit_source.hpp"

#include <cstdlib>
#include <string>

namespace buffon {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

BitSource::BitSource(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
}

std::uint64_t BitSource::next64() noexcept {
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

bool BitSource::flip() {
    if (count_ >= limit_) throw FlipBudgetExceeded();
    if (buffered_ == 0) {
        buffer_ = next64();
        buffered_ = 64;
    }
    // Most significant bit first.
    const bool bit = (buffer_ >> 63) != 0;
    buffer_ <<= 1;
    --buffered_;
    ++count_;
    return bit;
}

std::uint64_t default_seed(std::uint64_t fallback) {
    const char* env = std::getenv("BUFFON_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        std::size_t used = 0;
        const std::string text(env);
        const auto value = std::stoull(text, &used, 0);
        if (used == text.size()) return value;
    } catch (const std::exception&) {
    }
    return fallback;
}

}  // namespace buffon
