#pragma once

#include <cstdint>
#include <functional>

#include "buffon/bit_source.hpp"
#include "buffon/expr.hpp"

namespace buffon {

/// A Bernoulli generator of unknown parameter: each call is one fresh draw.
using Coin = std::function<bool()>;

/// Outcome of one run of a machine: the emitted value and what it cost.
struct SampleResult {
    std::uint64_t value = 0;
    std::uint64_t flips = 0;
    bool censored = false;  ///< the per-sample flip budget ran out; value is meaningless
};

/// Digits of a/b, produced one at a time by long division.
///
/// After `k` digits the remainder r satisfies a/b = 0.d1..dk + r/(b 2^k), so
/// r == 0 means every later digit is 0 and r == b means every later digit is 1.
class BinaryExpansion {
public:
    BinaryExpansion(std::uint64_t num, std::uint64_t den);

    bool next_digit() noexcept;
    bool tail_all_zero() const noexcept { return remainder_ == 0; }
    bool tail_all_one() const noexcept { return remainder_ == den_; }

private:
    std::uint64_t remainder_;
    std::uint64_t den_;
};

/// Machines over raw coins. These are the building blocks the interpreter runs.
namespace machine {

/// Number of successes of `lam` before its first failure: Geo(lambda).
std::uint64_t geometric(const Coin& lam);

/// Geo(1/2) straight from the source.
std::uint64_t geometric_half(BitSource& src);

/// Bernoulli(a/b): index Z = 1 + Geo(1/2) selects a digit of a/b.
///
/// The flips that draw Z double as a uniform V compared digit by digit with
/// a/b; the loop stops as soon as the remaining digits of a/b are all equal,
/// so dyadic inputs cost at most their digit length and 0 and 1 cost nothing.
bool bernoulli_rational(std::uint64_t num, std::uint64_t den, BitSource& src);

/// Bernoulli(1/3) by pairs of flips: 11 succeeds, 01 and 10 fail, 00 repeats.
///
/// The other valid convention (00 succeeds, 11 repeats) has the same law and cost.
bool bernoulli_third_markov(BitSource& src);

/// 1/(1+p): loop { p fails -> 1; p fails -> 0 }.
bool even_parity(const Coin& p);

}  // namespace machine

ExprPtr even_parity(ExprPtr e);

/// Geo(phi) where phi is e's value at `binding`. Requires phi < 1.
SampleResult geometric(const Expr& e, const ExprPtr& binding, BitSource& src);

SampleResult bernoulli_rational(std::uint64_t num, std::uint64_t den, BitSource& src);

SampleResult bernoulli_third_markov(BitSource& src);

}  // namespace buffon
