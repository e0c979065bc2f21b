#pragma once

#include <cstdint>
#include <memory>

#include "buffon/bit_source.hpp"
#include "buffon/combinators.hpp"
#include "buffon/expr.hpp"
#include "buffon/grammar.hpp"

namespace buffon {

/// Flip accounting for walk machines: the walk's own flips are reported
/// apart from whatever the lambda coin spent.
struct WalkCost {
    std::uint64_t walk_flips = 0;
};

namespace machine {

/// sqrt(1 - lam). Streamed form with a single signed counter:
/// loop { lam fails -> stop; two +-1 steps }, succeed iff the counter is 0.
bool sqrt_one_minus(const Coin& lam, BitSource& src, WalkCost* cost = nullptr);

/// (1 - lam) S_t(lam / 2) with S_t(z) = sum C(tn, n) z^(tn):
/// loop { lam fails -> stop; one step, +(t-1) on heads, -1 on tails }.
bool binom_walk(std::uint64_t t, const Coin& lam, BitSource& src, WalkCost* cost = nullptr);

/// (1 - lam) S(lam / 2) for the grammar's OGF S: N ~ Geo(lam) uniform
/// letters fed to the deterministic recognizer. Stops as soon as the
/// recognizer rejects.
bool grammar_word(const BistochGrammar& g, const Coin& lam, BitSource& src);

/// Balanced-walk test: 2 * half_len flips, true iff heads == tails.
bool balanced_walk(std::uint64_t half_len, BitSource& src);

/// 1/pi: T := X1 + X2 with X_i ~ Geo(1/4); with probability 5/9 T += 1;
/// succeed iff three independent walks of length 2T all balance.
bool rama(BitSource& src);

/// Same machine with the 5/9 step supplied by the caller, for swapping in
/// another exact Bernoulli(5/9).
bool rama_with(BitSource& src, const Coin& five_ninths);

}  // namespace machine

ExprPtr sqrt_one_minus(ExprPtr lam);
/// sqrt(lam), through the complemented input.
ExprPtr sqrt0(ExprPtr lam);
ExprPtr binom_walk(std::uint64_t t, ExprPtr lam);
ExprPtr grammar_bernoulli(std::shared_ptr<const BistochGrammar> g, ExprPtr lam);
bool grammar_membership(const BistochGrammar& g, std::string_view word);
ExprPtr rama_inv_pi();

}  // namespace buffon
