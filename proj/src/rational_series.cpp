#include "buffon/rational_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace buffon {

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

RationalSeries::RationalSeries(std::size_t order) : coeffs_(order + 1) {}

RationalSeries::RationalSeries(std::vector<Rational> coeffs, std::size_t order)
    : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1);
}

RationalSeries RationalSeries::constant(const Rational& c, std::size_t order) {
    RationalSeries s(order);
    s.coeffs_[0] = c;
    return s;
}

RationalSeries RationalSeries::monomial(const Rational& c, std::size_t degree, std::size_t order) {
    RationalSeries s(order);
    if (degree <= order) s.coeffs_[degree] = c;
    return s;
}

std::size_t RationalSeries::valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] != 0) return k;
    }
    return coeffs_.size();
}

RationalSeries RationalSeries::truncated(std::size_t order) const {
    return RationalSeries(std::vector<Rational>(coeffs_.begin(),
                                                coeffs_.begin() + std::min(order + 1, coeffs_.size())),
                          order);
}

RationalSeries RationalSeries::reciprocal() const {
    if (coeffs_[0] == 0) throw std::domain_error("series reciprocal needs a nonzero constant term");
    const std::size_t d = order();
    RationalSeries inv(d);
    inv.coeffs_[0] = 1 / coeffs_[0];
    for (std::size_t k = 1; k <= d; ++k) {
        Rational acc = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            if (coeffs_[j] != 0) acc += coeffs_[j] * inv.coeffs_[k - j];
        }
        inv.coeffs_[k] = -acc * inv.coeffs_[0];
    }
    return inv;
}

Rational RationalSeries::evaluate(const Rational& q) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
    return acc;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& rhs) {
    if (rhs.order() < order()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& rhs) {
    if (rhs.order() < order()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    return *this;
}

RationalSeries& RationalSeries::operator*=(const Rational& c) {
    for (auto& x : coeffs_) x *= c;
    return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    const std::size_t d = std::min(a.order(), b.order());
    RationalSeries out(d);
    for (std::size_t i = 0; i <= d; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; i + j <= d; ++j) {
            if (b.coeffs_[j] != 0) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

}  // namespace buffon
