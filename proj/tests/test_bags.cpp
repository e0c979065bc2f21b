#include <doctest.h>

#include <cmath>

#include "buffon/bags.hpp"
#include "buffon/oracle.hpp"
#include "buffon/sampler.hpp"
#include "support.hpp"

using namespace buffon;
using buffon::testing::run_n;
using buffon::testing::within_4sigma;

TEST_CASE("a revealed digit costs nothing to read again") {
    GeometricBag bag;
    bag.set_digit(1, true);
    bag.set_digit(2, false);
    // Seed whose first flip is 1, so J = 1 after one geometric flip.
    std::uint64_t seed = 0;
    while (!BitSource(seed).flip()) ++seed;
    BitSource src(seed);
    CHECK(bag.sample(src));
    CHECK(src.flip_count() == 1);  // the geometric flip only
    CHECK(bag.revealed() == 2);
    CHECK_THROWS_AS(bag.set_digit(1, false), std::logic_error);
    CHECK_NOTHROW(bag.set_digit(1, true));
    CHECK_THROWS_AS(bag.set_digit(0, true), std::out_of_range);
}

TEST_CASE("digit indices are unbounded") {
    GeometricBag bag;
    bag.set_digit(5000, true);
    CHECK(bag.digit(5000) == true);
    CHECK_FALSE(bag.digit(4999).has_value());
    CHECK_FALSE(bag.digit(0).has_value());
    CHECK(bag.revealed() == 1);
}

TEST_CASE("bag moments E[U^k] = 1/(k+1)") {
    BitSource src(3);
    const int n = 200000;
    int one = 0;
    int two = 0;
    int three = 0;
    for (int i = 0; i < n; ++i) {
        GeometricBag bag;
        const bool a = bag_bernoulli(bag, src);
        const bool b = bag_bernoulli(bag, src);
        const bool c = bag_bernoulli(bag, src);
        one += a;
        two += a && b;
        three += a && b && c;
    }
    CHECK(within_4sigma(one / double(n), 0.5, n));
    CHECK(within_4sigma(two / double(n), 1.0 / 3, n));
    CHECK(within_4sigma(three / double(n), 0.25, n));
}

TEST_CASE("integrator laws") {
    const auto one = ex::constant(1, 1);
    const int n = 100000;

    const auto sq = ex::int1(ex::conj(ex::x(), ex::x()));
    CHECK(oracle_value(*sq, one).value == doctest::Approx(1.0 / 3));
    CHECK(within_4sigma(run_n(*sq, one, n, 1).p_hat, 1.0 / 3, n));

    // (1/x) integral_0^x w dw = x / 2.
    const auto lin = ex::int1(ex::x());
    CHECK(oracle_value(*lin, ex::constant(1, 3)).value == doctest::Approx(1.0 / 6));
    CHECK(within_4sigma(run_n(*lin, ex::constant(1, 3), n, 2).p_hat, 1.0 / 6, n));

    const auto ln2 = ex::int1(ex::even(ex::x()));
    CHECK(oracle_value(*ln2, one).value == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(within_4sigma(run_n(*ln2, one, n, 3).p_hat, std::log(2.0), n));

    const auto unit = ex::int1(one);
    CHECK(oracle_value(*unit, ex::flip()).value == 1.0);
    CHECK(run_n(*unit, ex::flip(), 1000, 4).p_hat == 1.0);

    // Nested: (1/x) integral (1/w) integral_0^w v dv dw = x / 4.
    const auto nested = ex::int1(ex::int1(ex::x()));
    CHECK(oracle_value(*nested, one).value == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(within_4sigma(run_n(*nested, one, n, 5).p_hat, 0.25, n));
}

TEST_CASE("named integrator machines") {
    const auto m = named_integrator_machines();
    const auto half = ex::flip();
    const int n = 100000;

    const double log1p = std::log(1.5);
    CHECK(oracle_value(*m.log1p, half).value == doctest::Approx(log1p).epsilon(1e-10));
    CHECK(within_4sigma(run_n(*m.log1p, half, n, 11).p_hat, log1p, n));

    const double atan = std::atan(0.5);
    CHECK(oracle_value(*m.atan, half).value == doctest::Approx(atan).epsilon(1e-10));
    CHECK(within_4sigma(run_n(*m.atan, half, n, 12).p_hat, atan, n));

    const double erf_int = std::sqrt(M_PI / 2) * std::erf(0.5 / std::sqrt(2.0));
    CHECK(oracle_value(*m.erf_int, half).value == doctest::Approx(erf_int).epsilon(1e-10));
    CHECK(within_4sigma(run_n(*m.erf_int, half, n, 13).p_hat, erf_int, n));

    const auto stats = run_n(*m.asin_half, half, n, 14);
    CHECK(oracle_value(*m.asin_half, half).value == doctest::Approx(M_PI / 12).epsilon(1e-10));
    CHECK(within_4sigma(stats.p_hat, M_PI / 12, n));
    CHECK(stats.flips.mean > 4.0);
    CHECK(stats.flips.mean < 6.0);
}

TEST_CASE("pi machines") {
    const int n = 100000;
    CHECK(oracle_value(*machin_quarter_pi(), nullptr).value == doctest::Approx(M_PI / 4).epsilon(1e-10));
    CHECK(oracle_value(*pi_eighth(), nullptr).value == doctest::Approx(M_PI / 8).epsilon(1e-10));
    CHECK(oracle_value(*mgl_quarter_pi(), nullptr).value == doctest::Approx(M_PI / 4).epsilon(1e-10));
    CHECK(oracle_value(*asin_half_at_one(), nullptr).value == doctest::Approx(M_PI / 4).epsilon(1e-10));
    CHECK(within_4sigma(run_n(*pi_eighth(), nullptr, n, 21).p_hat, M_PI / 8, n));
    CHECK(within_4sigma(run_n(*machin_quarter_pi(), nullptr, n, 22).p_hat, M_PI / 4, n));
    // Weak machines: infinite mean cost, so a budget keeps the run finite.
    RunOptions opts;
    opts.n = 10000;
    opts.seed = 23;
    opts.budget = 100000;
    const auto mgl = run(*mgl_quarter_pi(), nullptr, opts);
    CHECK(std::abs(mgl.p_hat - M_PI / 4) < 0.02);
}
