#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "buffon/bit_source.hpp"
#include "buffon/combinators.hpp"
#include "buffon/expr.hpp"
#include "buffon/perm_class.hpp"

namespace buffon {

/// Revealed prefix of the binary expansion of one uniform real.
/// Bits are only ever appended; a revealed bit never changes.
class UniformRegister {
public:
    UniformRegister() = default;
    explicit UniformRegister(std::vector<bool> bits) : bits_(std::move(bits)) {}

    std::size_t size() const noexcept { return bits_.size(); }
    bool bit(std::size_t i) const { return bits_.at(i); }
    const std::vector<bool>& bits() const noexcept { return bits_; }

    /// Bit i (0-based), revealing it with a flip if needed.
    bool reveal(std::size_t i, BitSource& src);

private:
    std::vector<bool> bits_;
};

enum class Order { FreshLess, FreshGreater };

struct Comparison {
    Order order;
    UniformRegister fresh;  ///< the bits of the fresh uniform revealed by the comparison
};

/// Draw a fresh uniform V and compare it with the register's U, revealing
/// bits of both in lockstep until they first differ.
Comparison compare_fresh(UniformRegister& reg, BitSource& src);

/// Streaming membership test: are N lazily drawn uniforms, in order, of
/// class `c`? Keeps a single register; stops at the first violation.
bool test_order_type(PermClass c, std::uint64_t n, BitSource& src);

/// One accepted draw of the schema.
struct VnOutcome {
    std::uint64_t value = 0;             ///< the accepted N
    std::uint64_t trials = 0;            ///< K, number of iterations including the accepted one
    std::uint64_t comparison_flips = 0;  ///< flips spent by the order-type tests
};

namespace machine {

/// P(N = n) = P_n lam^n / (n! P(lam)): draw N ~ Geo(lam), test the order
/// type of N lazy uniforms, start over on rejection.
VnOutcome vn_variate(PermClass c, const Coin& lam, BitSource& src);

/// Success iff the schema returns N == a.
bool vn_value(PermClass c, std::uint64_t a, const Coin& lam, BitSource& src);

/// Success iff the schema's trial count K == b. Gives up once K would exceed b.
bool vn_iter(PermClass c, std::uint64_t b, const Coin& lam, BitSource& src);

/// N := 1 + Geo(lam), then r independent first-is-max tests of length N.
bool polylog(std::uint64_t r, const Coin& lam, BitSource& src);

}  // namespace machine

struct VnSample {
    SampleResult result;  ///< value = N, flips = everything including the lam draws
    std::uint64_t trials = 0;
    std::uint64_t comparison_flips = 0;
};

VnSample vn_variate(PermClass c, const Expr& lam, const ExprPtr& binding, BitSource& src);

/// P_n / n! for the class.
double class_coefficient(PermClass c, std::uint64_t n);

/// The class EGF P(lam).
double class_egf(PermClass c, double lam);

/// Success rate of one trial, s = (1 - lam) P(lam).
double trial_success_rate(PermClass c, double lam);

/// E[K] = 1/s.
double vn_iterations_stat(PermClass c, double lam);

/// Law of the accepted N: P_n lam^n / (n! P(lam)).
double vn_probability(PermClass c, double lam, std::uint64_t n);

ExprPtr vn_value_bernoulli(PermClass c, std::uint64_t a, ExprPtr lam);
ExprPtr vn_iter_bernoulli(PermClass c, std::uint64_t b, ExprPtr lam);
ExprPtr polylog_bernoulli(std::uint64_t r, ExprPtr lam);

/// The twelve exp / log / trig machines, as functions of x:
///
///   exp_neg            e^-x                 exp_x_minus_1      e^(x-1)
///   one_minus_x_exp    (1-x) e^x            x_exp_one_minus_x  x e^(1-x)
///   x_over_log         x / log(1/(1-x))     one_minus_x_over_log  (1-x) / log(1/x)
///   one_minus_x_log    (1-x) log(1/(1-x))   x_log_inv_x        x log(1/x)
///   cos                cos x                one_minus_x_over_cos  (1-x) / cos x
///   x_over_tan         x / tan x            one_minus_x_tan    (1-x) tan x
///
/// Throws ExprError for any other name.
ExprPtr transcendental_machine(std::string_view name);
const std::vector<std::string_view>& transcendental_names();

}  // namespace buffon
