#pragma once

#include <cstdint>

#include "buffon/expr.hpp"
#include "buffon/perm_class.hpp"

namespace buffon {

/// A denoted value with an upper bound on its numerical error.
struct OracleValue {
    double value = 0.0;
    double error_bound = 0.0;
};

enum class QuadratureRule {
    AdaptiveSimpson,  ///< Richardson-corrected adaptive Simpson
    GaussKronrod,     ///< adaptive 31-point Gauss-Kronrod (Boost)
};

struct OracleOptions {
    QuadratureRule rule = QuadratureRule::AdaptiveSimpson;
    /// Absolute tolerance handed to each integration.
    double tolerance = 1e-10;
};

/// The value of e's denoted function at the constant denoted by `binding`
/// (which may be null when e is closed). Throws ExprError when x is free
/// but unbound.
OracleValue oracle_value(const Expr& e, const ExprPtr& binding, const OracleOptions& opts = {});

/// The denoted function of e evaluated at a real point x in [0,1].
OracleValue oracle_at(const Expr& e, double x, const OracleOptions& opts = {});

/// Li_r(lam) by direct summation, with the tail bounded geometrically.
OracleValue polylog_series(std::uint64_t r, double lam);

/// S_t(z) = sum_n C(tn, n) z^(tn), summed in log space with a ratio tail bound.
OracleValue binomial_series(std::uint64_t t, double z);

/// 1/pi from the ballot-walk machine's own law:
/// sum_T P(T) (C(2T,T) / 4^T)^3.
OracleValue rama_series();

}  // namespace buffon
