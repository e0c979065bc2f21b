#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "buffon/bit_source.hpp"
#include "buffon/expr.hpp"

namespace buffon {

/// A uniform U in [0,1] whose binary digits are revealed on demand.
///
/// Digits are indexed from 1. An unrevealed digit is drawn with one flip the
/// first time it is read and never changes afterwards. There is no cap on
/// the index.
class GeometricBag {
public:
    /// Bernoulli(U): read digit J with J = 1 + Geo(1/2).
    bool sample(BitSource& src);

    std::optional<bool> digit(std::size_t index) const;
    std::size_t revealed() const noexcept;

    /// Pin a digit, for tests and replays. Throws if it was already revealed
    /// with a different value.
    void set_digit(std::size_t index, bool value);

private:
    bool fetch(std::size_t index, BitSource& src);

    std::vector<std::int8_t> digits_;  // -1 = unrevealed; slot i holds digit i + 1
};

bool bag_bernoulli(GeometricBag& bag, BitSource& src);

/// (1/x) integral_0^x body(w) dw.
///
/// Each sample of the node owns a fresh bag; inside the body every read of
/// x becomes "bag digit, then the outer x" (a Bernoulli(x U) with the same U
/// for the whole sample). Nested integrators each own their bag.
ExprPtr int1(ExprPtr body);

/// Functions of x built from one integrator.
ExprPtr log1p_machine();       ///< log(1 + x)
ExprPtr atan_machine();        ///< arctan x
ExprPtr erf_integral_machine();///< integral_0^x e^(-w^2/2) dw
ExprPtr asin_half_machine();   ///< arcsin(x) / 2
/// integral_0^x sqrt(1-w^2)/(1+w) dw = arcsin x + sqrt(1-x^2) - 1.
ExprPtr asin_integral_machine();

struct IntegratorMachines {
    ExprPtr log1p;
    ExprPtr atan;
    ExprPtr erf_int;
    ExprPtr asin_half;
};

IntegratorMachines named_integrator_machines();

/// pi/4 = arctan 1 from a single bag: loop { bag fails -> 1; bag fails -> 1;
/// bag fails -> 0; bag fails -> 0 }. Infinite expected cost.
ExprPtr mgl_quarter_pi();

/// pi/4 = (1/2) [ 2 arctan(1/2) + (2/3) 3 arctan(1/3) ].
ExprPtr machin_quarter_pi();

/// pi/8 = (1/2) [ arctan(1/2) + arctan(1/3) ], the coin-only listing:
/// a flip picks arctan(flip) or arctan(Bernoulli(1/3) by pairs).
ExprPtr pi_eighth();

/// pi/4 = arcsin(1)/2. The square-root walk cannot run at x = 1 (its loop
/// never ends), so the 1 - sqrt(1 - x^2) half is the constant 1 here and
/// only the integral runs. Infinite expected cost.
ExprPtr asin_half_at_one();

}  // namespace buffon
