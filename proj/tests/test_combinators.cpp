#include <doctest.h>

#include <cmath>

#include "buffon/combinators.hpp"
#include "buffon/oracle.hpp"
#include "buffon/sampler.hpp"
#include "support.hpp"

using namespace buffon;
using buffon::testing::within_4sigma;

namespace {

double rate(const ExprPtr& e, std::uint64_t n, std::uint64_t seed, const ExprPtr& binding = nullptr) {
    return buffon::testing::run_n(*e, binding, n, seed).p_hat;
}

}  // namespace

TEST_CASE("long-division digits") {
    BinaryExpansion third(1, 3);
    for (int i = 0; i < 20; ++i) CHECK(third.next_digit() == (i % 2 == 1));

    BinaryExpansion half(1, 2);
    CHECK(half.next_digit());
    CHECK(half.tail_all_zero());

    BinaryExpansion one(1, 1);
    CHECK(one.tail_all_one());

    BinaryExpansion big(0x7fffffffffffffffULL, 0xffffffffffffffffULL);
    CHECK_FALSE(big.next_digit());
    CHECK(big.next_digit());

    CHECK_THROWS_AS(BinaryExpansion(3, 2), ExprError);
    CHECK_THROWS_AS(BinaryExpansion(0, 0), ExprError);
}

TEST_CASE("rational machine: costs at the edges") {
    BitSource src(5);
    for (int i = 0; i < 1000; ++i) {
        CHECK(bernoulli_rational(1, 2, src).flips == 1);
        const auto zero = bernoulli_rational(0, 7, src);
        CHECK(zero.value == 0);
        CHECK(zero.flips == 0);
        const auto one = bernoulli_rational(7, 7, src);
        CHECK(one.value == 1);
        CHECK(one.flips == 0);
    }
}

TEST_CASE("rational machine: 1/3 law and cost tail") {
    BitSource src(11);
    const int n = 100000;
    int ones = 0;
    CountMap flips;
    for (int i = 0; i < n; ++i) {
        const auto r = bernoulli_rational(1, 3, src);
        ones += static_cast<int>(r.value);
        ++flips[r.flips];
    }
    CHECK(std::abs(ones / double(n) - 1.0 / 3.0) < 0.006);
    CHECK(histogram_quantile(flips, 0.95) <= 12);
    // Z = 1 + Geo(1/2) digits are read: P(flips > m) = 2^-m exactly.
    std::uint64_t over5 = 0;
    for (const auto& [k, c] : flips) over5 += k > 5 ? c : 0;
    CHECK(within_4sigma(over5 / double(n), 1.0 / 32, n));
}

TEST_CASE("pairs machine for 1/3") {
    SUBCASE("first round 11 succeeds in two flips") {
        // Find a seed whose stream starts 11.
        std::uint64_t seed = 0;
        for (;; ++seed) {
            BitSource peek(seed);
            if (peek.flip() && peek.flip()) break;
        }
        BitSource src(seed);
        const auto r = bernoulli_third_markov(src);
        CHECK(r.value == 1);
        CHECK(r.flips == 2);
    }
    SUBCASE("law and mean cost 8/3") {
        BitSource src(12);
        const int n = 100000;
        double ones = 0;
        double flips = 0;
        for (int i = 0; i < n; ++i) {
            const auto r = bernoulli_third_markov(src);
            ones += r.value;
            flips += r.flips;
        }
        CHECK(within_4sigma(ones / n, 1.0 / 3.0, n));
        CHECK(std::abs(flips / n - 8.0 / 3.0) < 0.05);
    }
}

TEST_CASE("algebra of the base combinators") {
    const auto half = ex::constant(1, 2);
    CHECK(within_4sigma(rate(ex::conj(half, half), 100000, 1), 0.25, 100000));
    CHECK(within_4sigma(rate(ex::complement(ex::constant(1, 3)), 100000, 2), 2.0 / 3.0, 100000));
    CHECK(within_4sigma(rate(ex::mean(ex::flip(), ex::flip()), 100000, 3), 0.5, 100000));
    CHECK(within_4sigma(rate(ex::disj(ex::constant(1, 3), ex::constant(1, 4)), 100000, 4), 0.5, 100000));
    CHECK(within_4sigma(rate(ex::cond(ex::constant(1, 3), ex::constant(1, 1), ex::constant(1, 4)), 100000, 5),
                        1.0 / 3.0 + 2.0 / 3.0 * 0.25, 100000));
}

TEST_CASE("cond reads r and then exactly one branch") {
    BitSource src(8);
    const auto e = ex::cond(ex::constant(1, 1), ex::flip(), ex::rama());
    for (int i = 0; i < 100; ++i) CHECK(sample_bernoulli(*e, nullptr, src).flips == 1);
}

TEST_CASE("even parity") {
    CHECK(oracle_value(*ex::even(ex::flip()), nullptr).value == doctest::Approx(2.0 / 3.0));
    CHECK(oracle_value(*ex::even(ex::constant(0, 1)), nullptr).value == 1.0);
    CHECK(std::abs(rate(ex::even(ex::flip()), 100000, 6) - 2.0 / 3.0) < 0.006);
    CHECK(rate(ex::even(ex::constant(0, 1)), 1000, 7) == 1.0);
}

TEST_CASE("geometric from a Bernoulli coin") {
    BitSource src(9);
    const int n = 100000;
    for (const auto& [expr, phi] : {std::pair{ex::flip(), 0.5}, std::pair{ex::constant(1, 4), 0.25}}) {
        int zeros = 0;
        int ones = 0;
        double total = 0;
        for (int i = 0; i < n; ++i) {
            const auto k = geometric(*expr, nullptr, src).value;
            zeros += k == 0;
            ones += k == 1;
            total += static_cast<double>(k);
        }
        CHECK(within_4sigma(zeros / double(n), 1 - phi, n));
        CHECK(within_4sigma(ones / double(n), phi * (1 - phi), n));
        const double mean = phi / (1 - phi);
        CHECK(std::abs(total / n - mean) < 4 * std::sqrt(phi) / (1 - phi) / std::sqrt(double(n)));
    }
}

TEST_CASE("constants are validated") {
    CHECK_THROWS_AS(ex::constant(4, 3), ExprError);
    CHECK_THROWS_AS(ex::constant(0, 0), ExprError);
    CHECK_NOTHROW(ex::constant(0, 1));
    CHECK_THROWS_AS(sample_bernoulli(*ex::x(), nullptr, *std::make_unique<BitSource>(1)), ExprError);
}

TEST_CASE("oracle composes like the algebra on random expressions") {
    buffon::testing::AstGenerator gen(99);
    for (int i = 0; i < 50; ++i) {
        const auto a = gen.expr(2);
        const auto b = gen.expr(2);
        const auto r = gen.expr(2);
        const auto at = gen.binding();
        const double va = oracle_value(*a, at).value;
        const double vb = oracle_value(*b, at).value;
        const double vr = oracle_value(*r, at).value;
        CHECK(oracle_value(*ex::complement(a), at).value == doctest::Approx(1 - va).epsilon(1e-12));
        CHECK(oracle_value(*ex::conj(a, b), at).value == doctest::Approx(va * vb).epsilon(1e-12));
        CHECK(oracle_value(*ex::cond(r, a, b), at).value ==
              doctest::Approx(vr * va + (1 - vr) * vb).epsilon(1e-12));
    }
}

TEST_CASE("budget censoring is reported") {
    BitSource src(3);
    const auto r = sample_bernoulli(*ex::rama(), nullptr, src, 0);
    CHECK(r.censored);
    CHECK(r.flips == 0);
    // The limit is lifted afterwards.
    CHECK_FALSE(sample_bernoulli(*ex::flip(), nullptr, src, 5).censored);
}

TEST_CASE("replay determinism across machines") {
    buffon::testing::AstGenerator gen(5);
    for (int i = 0; i < 10; ++i) {
        const auto e = gen.expr(3);
        const auto at = gen.binding();
        BitSource a(77);
        BitSource b(77);
        for (int k = 0; k < 200; ++k) {
            const auto ra = sample_bernoulli(*e, at, a);
            const auto rb = sample_bernoulli(*e, at, b);
            REQUIRE(ra.value == rb.value);
            REQUIRE(ra.flips == rb.flips);
        }
    }
}
