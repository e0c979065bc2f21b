#include "buffon/cost_pgf.hpp"

#include <cmath>
#include <stdexcept>

namespace buffon {

namespace {

BigInt binomial(std::size_t n, std::size_t k) {
    BigInt c = 1;
    for (std::size_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

BigInt factorial(std::size_t n) {
    BigInt f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<RationalSeries> path_length_pgfs(std::size_t max_n, std::size_t d) {
    std::vector<RationalSeries> h;
    h.reserve(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
        if (n < 2) {
            h.push_back(RationalSeries::constant(1, d));
            continue;
        }
        if (n > d) {
            // Path length is at least n, so nothing survives truncation.
            h.emplace_back(d);
            continue;
        }
        RationalSeries sum(d);
        for (std::size_t k = 1; k < n; ++k) sum += (h[k] * h[n - k]) * Rational(binomial(n, k));
        const Rational two_n = Rational(BigInt(1) << n);
        const auto shift = RationalSeries::monomial(1 / two_n, n, d);
        const auto denom = RationalSeries::constant(1, d) - RationalSeries::monomial(2 / two_n, n, d);
        h.push_back(shift * sum * denom.reciprocal());
    }
    return h;
}

RationalSeries path_length_pgf(std::size_t n, std::size_t d) { return path_length_pgfs(n, d).back(); }

double expected_path_length(std::uint64_t n) {
    if (n < 2) return 0.0;
    double total = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double term = -std::expm1(static_cast<double>(n - 1) * std::log1p(-std::ldexp(1.0, -k)));
        if (k > 0 && term < 1e-18 * total) break;
        total += k == 0 ? 1.0 : term;
    }
    return static_cast<double>(n) * total;
}

std::vector<BigInt> zigzag_numbers(std::size_t max_n) {
    // Seidel's boustrophedon triangle.
    std::vector<BigInt> out{1};
    std::vector<BigInt> row{1};
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<BigInt> next(n + 1);
        next[0] = 0;
        for (std::size_t k = 1; k <= n; ++k) next[k] = next[k - 1] + row[n - k];
        out.push_back(next[n]);
        row = std::move(next);
    }
    return out;
}

Rational class_coefficient_exact(PermClass c, std::size_t n) {
    switch (c) {
        case PermClass::All:
            return 1;
        case PermClass::Sorted:
            return Rational(BigInt(1), factorial(n));
        case PermClass::RecordFirstMax:
            return n == 0 ? Rational(0) : Rational(BigInt(1), BigInt(n));
        case PermClass::AlternatingEven:
        case PermClass::AlternatingOdd: {
            const bool want_odd = c == PermClass::AlternatingOdd;
            if ((n % 2 == 1) != want_odd) return 0;
            return Rational(zigzag_numbers(n).back(), factorial(n));
        }
    }
    throw std::invalid_argument("unknown permutation class");
}

RationalSeries cost_pgf(PermClass c, const Rational& lam, std::size_t d) {
    if (lam <= 0 || lam >= 1) throw std::domain_error("lambda must lie in (0,1)");
    const std::size_t max_n = std::max<std::size_t>(d, 1);
    const auto h = path_length_pgfs(max_n, d);
    RationalSeries plus(d);
    RationalSeries minus(d);
    Rational power = 1;
    for (std::size_t n = 0; n <= max_n; ++n) {
        const Rational p = class_coefficient_exact(c, n);
        plus += h[n] * (p * power);
        minus += h[n] * ((1 - p) * power);
        power *= lam;
    }
    plus *= 1 - lam;
    minus *= 1 - lam;
    return plus * (RationalSeries::constant(1, d) - minus).reciprocal();
}

}  // namespace buffon
