#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "buffon/perm_class.hpp"
#include "buffon/rational_series.hpp"

namespace buffon {

/// Default truncation order for cost series.
inline constexpr std::size_t kDefaultPgfOrder = 16;

/// h_n(q): PGF of the path length of the trie built on n random infinite
/// words, truncated at order d. h_0 = h_1 = 1 and, for n >= 2,
///
///     h_n = (q^n / 2^n) sum_{k=1}^{n-1} C(n,k) h_k h_{n-k} / (1 - q^n 2^(1-n)),
///
/// which is what H(z,q) = H(zq/2, q)^2 + z(1-q) gives coefficient by coefficient.
RationalSeries path_length_pgf(std::size_t n, std::size_t d);

/// h_0 .. h_max_n in one pass.
std::vector<RationalSeries> path_length_pgfs(std::size_t max_n, std::size_t d);

/// E_n[omega] = n sum_{k>=0} [1 - (1 - 2^-k)^(n-1)], summed until the terms vanish in double.
double expected_path_length(std::uint64_t n);

/// Euler zigzag numbers A_0..A_max_n (1, 1, 1, 2, 5, 16, 61, ...).
std::vector<BigInt> zigzag_numbers(std::size_t max_n);

/// P_n / n! for the class, exactly.
Rational class_coefficient_exact(PermClass c, std::size_t n);

/// E(q^C) = H+(lam, q) / (1 - H-(lam, q)) for the flip cost C of the
/// von Neumann schema under the trie model, truncated at order d, with
///
///     H+(z,q) = (1-z) sum (P_n/n!) h_n(q) z^n,
///     H-(z,q) = (1-z) sum (1 - P_n/n!) h_n(q) z^n.
///
/// The sums stop at n = d: h_n has no term below q^n for n >= 2, so the
/// truncated result is exact.
///
/// This is the cost of building the whole trie. The samplers test the
/// order type in streaming fashion and stop early, so their empirical flip
/// counts are smaller and are not compared with this series.
RationalSeries cost_pgf(PermClass c, const Rational& lam, std::size_t d = kDefaultPgfOrder);

}  // namespace buffon
