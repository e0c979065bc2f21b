#include "buffon/combinators.hpp"

#include "buffon/sampler.hpp"

namespace buffon {

BinaryExpansion::BinaryExpansion(std::uint64_t num, std::uint64_t den)
    : remainder_(num), den_(den) {
    if (den == 0 || num > den) throw ExprError("binary expansion needs 0 <= a <= b, b >= 1");
}

bool BinaryExpansion::next_digit() noexcept {
    // 2r >= b without forming 2r, which may not fit.
    const std::uint64_t gap = den_ - remainder_;
    if (remainder_ >= gap) {
        remainder_ -= gap;
        return true;
    }
    remainder_ += remainder_;
    return false;
}

namespace machine {

std::uint64_t geometric(const Coin& lam) {
    std::uint64_t k = 0;
    while (lam()) ++k;
    return k;
}

std::uint64_t geometric_half(BitSource& src) {
    std::uint64_t k = 0;
    while (!src.flip()) ++k;
    return k;
}

bool bernoulli_rational(std::uint64_t num, std::uint64_t den, BitSource& src) {
    BinaryExpansion digits(num, den);
    for (;;) {
        if (digits.tail_all_zero()) return false;
        if (digits.tail_all_one()) return true;
        const bool digit = digits.next_digit();
        if (src.flip()) return digit;
    }
}

bool bernoulli_third_markov(BitSource& src) {
    for (;;) {
        const bool first = src.flip();
        const bool second = src.flip();
        if (first && second) return true;
        if (first != second) return false;
    }
}

bool even_parity(const Coin& p) {
    for (;;) {
        if (!p()) return true;
        if (!p()) return false;
    }
}

}  // namespace machine

ExprPtr even_parity(ExprPtr e) { return ex::even(std::move(e)); }

SampleResult geometric(const Expr& e, const ExprPtr& binding, BitSource& src) {
    const auto before = src.flip_count();
    const Coin coin = make_coin(e, binding, src);
    const auto k = machine::geometric(coin);
    return {k, src.flip_count() - before, false};
}

SampleResult bernoulli_rational(std::uint64_t num, std::uint64_t den, BitSource& src) {
    const auto before = src.flip_count();
    const bool bit = machine::bernoulli_rational(num, den, src);
    return {bit ? 1u : 0u, src.flip_count() - before, false};
}

SampleResult bernoulli_third_markov(BitSource& src) {
    const auto before = src.flip_count();
    const bool bit = machine::bernoulli_third_markov(src);
    return {bit ? 1u : 0u, src.flip_count() - before, false};
}

}  // namespace buffon
