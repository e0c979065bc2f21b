#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace buffon {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" in lowest terms, "p" when q = 1.
std::string to_string(const Rational& r);

/// Parse "a/b" or "a" into an exact rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// Power series in q with exact coefficients c_0..c_d, truncated at order d.
///
/// Every operation is closed at the truncation order: coefficient k of a
/// result only reads coefficients <= k of the operands. Mixing orders
/// truncates to the smaller one.
class RationalSeries {
public:
    explicit RationalSeries(std::size_t order);
    RationalSeries(std::vector<Rational> coeffs, std::size_t order);

    static RationalSeries constant(const Rational& c, std::size_t order);
    static RationalSeries monomial(const Rational& c, std::size_t degree, std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }
    Rational& operator[](std::size_t k) { return coeffs_.at(k); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    /// Index of the lowest nonzero coefficient, or order() + 1 if all are zero.
    std::size_t valuation() const;

    RationalSeries truncated(std::size_t order) const;
    /// 1 / s. Requires s[0] != 0.
    RationalSeries reciprocal() const;
    /// Sum of c_k q^k over the kept coefficients.
    Rational evaluate(const Rational& q) const;

    RationalSeries& operator+=(const RationalSeries& rhs);
    RationalSeries& operator-=(const RationalSeries& rhs);
    RationalSeries& operator*=(const Rational& c);

    friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
    friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
    friend RationalSeries operator*(RationalSeries a, const Rational& c) { return a *= c; }
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    friend bool operator==(const RationalSeries& a, const RationalSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Rational> coeffs_;
};

}  // namespace buffon
