#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "buffon/bags.hpp"
#include "buffon/cost_pgf.hpp"
#include "buffon/oracle.hpp"
#include "buffon/registry.hpp"

using namespace buffon;

namespace {

Rational q(long num, long den) { return Rational(num) / den; }

// Path-length distribution of the trie on n words, by enumerating the first
// `bits` bits of every word. Coefficients of q^k are exact for k <= bits + n - 2.
std::map<std::size_t, Rational> enumerate_trie(std::size_t n, std::size_t bits) {
    std::map<std::size_t, Rational> law;
    const std::size_t total = n * bits;
    const Rational weight = Rational(1) / (BigInt(1) << total);
    std::function<long(const std::vector<std::uint32_t>&, std::size_t)> length =
        [&](const std::vector<std::uint32_t>& words, std::size_t depth) -> long {
        if (words.size() <= 1) return static_cast<long>(depth * words.size());
        if (depth == bits) return -1;
        std::vector<std::uint32_t> zero;
        std::vector<std::uint32_t> one;
        for (auto w : words) (w >> depth & 1 ? one : zero).push_back(w);
        const long a = length(zero, depth + 1);
        const long b = length(one, depth + 1);
        return a < 0 || b < 0 ? -1 : a + b;
    };
    for (std::uint64_t pattern = 0; pattern < (1ULL << total); ++pattern) {
        std::vector<std::uint32_t> words(n);
        for (std::size_t i = 0; i < n; ++i) words[i] = static_cast<std::uint32_t>(pattern >> (i * bits) & ((1u << bits) - 1));
        const long len = length(words, 0);
        if (len >= 0) law[static_cast<std::size_t>(len)] += weight;
    }
    return law;
}

}  // namespace

TEST_CASE("rational series arithmetic") {
    const auto one_minus_q = RationalSeries({1, -1}, 6);
    const auto inv = one_minus_q.reciprocal();
    for (std::size_t k = 0; k <= 6; ++k) CHECK(inv[k] == 1);
    CHECK((inv * one_minus_q) == RationalSeries::constant(1, 6));
    CHECK(RationalSeries::monomial(q(1, 2), 3, 6).valuation() == 3);
    CHECK(RationalSeries(6).valuation() == 7);
    CHECK(inv.evaluate(q(1, 2)) == q(127, 64));
    CHECK_THROWS(RationalSeries({0, 1}, 4).reciprocal());
    CHECK(parse_rational("3/9") == q(1, 3));
    CHECK(parse_rational("1") == 1);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
    CHECK(to_string(q(6, 4)) == "3/2");
    CHECK(to_string(Rational(2)) == "2");
}

TEST_CASE("path length of two words") {
    const auto h2 = path_length_pgf(2, 8);
    CHECK(h2[0] == 0);
    CHECK(h2[2] == q(1, 2));
    CHECK(h2[4] == q(1, 4));
    CHECK(h2[6] == q(1, 8));
    CHECK(h2[8] == q(1, 16));
    CHECK(h2[3] == 0);
    CHECK(path_length_pgf(0, 4) == RationalSeries::constant(1, 4));
    CHECK(path_length_pgf(1, 4) == RationalSeries::constant(1, 4));
}

TEST_CASE("path-length series match exhaustive tries") {
    for (std::size_t n : {3u, 4u}) {
        const std::size_t bits = n == 3 ? 5 : 4;
        const auto law = enumerate_trie(n, bits);
        const std::size_t exact_up_to = bits + n - 2;
        const auto h = path_length_pgf(n, exact_up_to);
        for (std::size_t k = 0; k <= exact_up_to; ++k) {
            INFO("n = " << n << ", k = " << k);
            const auto it = law.find(k);
            CHECK(h[k] == (it == law.end() ? Rational(0) : it->second));
        }
    }
}

TEST_CASE("path-length series are probability series") {
    const auto hs = path_length_pgfs(6, 40);
    for (std::size_t n = 2; n <= 6; ++n) {
        CHECK(hs[n].valuation() >= n);
        Rational mass = 0;
        double mean = 0;
        for (std::size_t k = 0; k <= 40; ++k) {
            CHECK(hs[n][k] >= 0);
            mass += hs[n][k];
            mean += static_cast<double>(k) * static_cast<double>(hs[n][k]);
        }
        CHECK(mass <= 1);
        if (n <= 3) CHECK(mean == doctest::Approx(expected_path_length(n)).epsilon(1e-3));
    }
    CHECK(expected_path_length(2) == doctest::Approx(4.0));
    CHECK(expected_path_length(1) == 0.0);
}

TEST_CASE("zigzag numbers and class coefficients") {
    const auto a = zigzag_numbers(10);
    const std::vector<int> want{1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521};
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(a[i] == want[i]);
    CHECK(class_coefficient_exact(PermClass::Sorted, 4) == q(1, 24));
    CHECK(class_coefficient_exact(PermClass::RecordFirstMax, 4) == q(1, 4));
    CHECK(class_coefficient_exact(PermClass::AlternatingEven, 4) == q(5, 24));
    CHECK(class_coefficient_exact(PermClass::AlternatingOdd, 4) == 0);
    CHECK(class_coefficient_exact(PermClass::All, 9) == 1);
}

TEST_CASE("cost series of the sorted class at 1/2") {
    const auto pgf = cost_pgf(PermClass::Sorted, q(1, 2), 7);
    const std::vector<Rational> printed{q(3, 4), 0, q(7, 128), 0, q(119, 4096), q(19, 1024), q(2023, 131072),
                                        q(179, 16384)};
    for (std::size_t k = 0; k < printed.size(); ++k) CHECK(pgf[k] == printed[k]);
    // Constant term: one trial with N <= 1, accepted at no comparison cost.
    for (auto c : {PermClass::Sorted, PermClass::RecordFirstMax, PermClass::All}) {
        const auto s = cost_pgf(c, q(1, 3), 10);
        Rational mass = 0;
        for (const auto& coef : s.coeffs()) {
            CHECK(coef >= 0);
            mass += coef;
        }
        CHECK(mass <= 1);
    }
    // Every order type is accepted, so the cost is the trie on N ~ Geo(1/2) words.
    const auto hs = path_length_pgfs(6, 6);
    RationalSeries all(6);
    Rational weight = q(1, 2);
    for (std::size_t n = 0; n <= 6; ++n, weight /= 2) all += hs[n] * weight;
    CHECK(cost_pgf(PermClass::All, q(1, 2), 6) == all);
}

TEST_CASE("oracle values") {
    CHECK(oracle_value(*ex::even(ex::flip()), nullptr).value == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(oracle_value(*ex::cond(ex::third(), ex::flip(), ex::constant(0, 1)), nullptr).value ==
          doctest::Approx(1.0 / 6));
    const auto atan1 = oracle_value(*ex::compose(atan_machine(), ex::constant(1, 1)), nullptr);
    CHECK(std::abs(atan1.value - M_PI / 4) < 1e-9);
    CHECK(atan1.error_bound < 1e-9);
    const auto zeta4 = oracle_value(*named("zeta4"), nullptr);
    CHECK(std::abs(zeta4.value - 7 * std::pow(M_PI, 4) / 720) < 1e-9);
    CHECK(zeta4.value == doctest::Approx(0.9470328294).epsilon(1e-9));
    CHECK_THROWS_AS(oracle_value(*ex::x(), nullptr), ExprError);
    CHECK(oracle_at(*ex::square(ex::x()), 0.3).value == doctest::Approx(0.09));
}

TEST_CASE("the two quadrature rules agree") {
    OracleOptions gk;
    gk.rule = QuadratureRule::GaussKronrod;
    for (const auto& m : named_machines()) {
        INFO(m.name);
        const double simpson = oracle_value(*m.expr, nullptr).value;
        CHECK(std::abs(oracle_value(*m.expr, nullptr, gk).value - simpson) < 1e-8);
        if (m.exact) CHECK(std::abs(simpson - *m.exact) < 1e-9);
    }
}
