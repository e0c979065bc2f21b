#include "buffon/walks.hpp"

#include <cstdlib>

namespace buffon {

namespace machine {

bool sqrt_one_minus(const Coin& lam, BitSource& src, WalkCost* cost) {
    std::int64_t delta = 0;
    std::uint64_t flips = 0;
    while (lam()) {
        delta += src.flip() ? 1 : -1;
        delta += src.flip() ? 1 : -1;
        flips += 2;
    }
    if (cost) cost->walk_flips = flips;
    return delta == 0;
}

bool binom_walk(std::uint64_t t, const Coin& lam, BitSource& src, WalkCost* cost) {
    if (t < 2) throw ExprError("walk step t must be >= 2");
    const auto up = static_cast<std::int64_t>(t - 1);
    std::int64_t delta = 0;
    std::uint64_t flips = 0;
    while (lam()) {
        delta += src.flip() ? up : -1;
        ++flips;
    }
    if (cost) cost->walk_flips = flips;
    return delta == 0;
}

bool grammar_word(const BistochGrammar& g, const Coin& lam, BitSource& src) {
    BistochGrammar::Recognizer rec(g);
    while (lam()) {
        if (!rec.feed(src.flip())) return false;
    }
    return rec.complete();
}

bool balanced_walk(std::uint64_t half_len, BitSource& src) {
    std::int64_t delta = 0;
    for (std::uint64_t i = 0; i < 2 * half_len; ++i) delta += src.flip() ? 1 : -1;
    return delta == 0;
}

bool rama_with(BitSource& src, const Coin& five_ninths) {
    const Coin quarter = [&src] { return machine::bernoulli_rational(1, 4, src); };
    std::uint64_t t = geometric(quarter) + geometric(quarter);
    if (five_ninths()) ++t;
    for (int j = 0; j < 3; ++j) {
        if (!balanced_walk(t, src)) return false;
    }
    return true;
}

bool rama(BitSource& src) {
    return rama_with(src, [&src] { return machine::bernoulli_rational(5, 9, src); });
}

}  // namespace machine

ExprPtr sqrt_one_minus(ExprPtr lam) { return ex::sqrt1m(std::move(lam)); }

ExprPtr sqrt0(ExprPtr lam) { return ex::sqrt1m(ex::complement(std::move(lam))); }

ExprPtr binom_walk(std::uint64_t t, ExprPtr lam) { return ex::binom_walk(t, std::move(lam)); }

ExprPtr grammar_bernoulli(std::shared_ptr<const BistochGrammar> g, ExprPtr lam) {
    return ex::grammar(std::move(g), std::move(lam));
}

bool grammar_membership(const BistochGrammar& g, std::string_view word) { return g.accepts(word); }

ExprPtr rama_inv_pi() { return ex::rama(); }

}  // namespace buffon
