#pragma once

#include <cstdint>
#include <optional>

#include "buffon/bit_source.hpp"
#include "buffon/combinators.hpp"
#include "buffon/expr.hpp"

namespace buffon {

/// Run `e` once with x bound to the closed expression `binding` (may be null
/// when e is closed) and return the emitted bit with its flip cost.
///
/// With a budget, a sample that would need more than `budget` flips stops
/// early and comes back with censored = true.
SampleResult sample_bernoulli(const Expr& e, const ExprPtr& binding, BitSource& src,
                              std::optional<std::uint64_t> budget = std::nullopt);

/// A Coin that draws from `e` at `binding`. The coin references `e`,
/// `binding` and `src`; all three must outlive it.
Coin make_coin(const Expr& e, const ExprPtr& binding, BitSource& src);

}  // namespace buffon
