#include <doctest.h>

#include <cmath>
#include <string>

#include "buffon/oracle.hpp"
#include "buffon/walks.hpp"
#include "support.hpp"

using namespace buffon;
using buffon::testing::within_4sigma;

namespace {

std::string word_of(std::uint64_t bits, std::size_t len) {
    std::string w(len, 'T');
    for (std::size_t i = 0; i < len; ++i) {
        if (bits >> i & 1) w[i] = 'H';
    }
    return w;
}

std::shared_ptr<const BistochGrammar> borrow(const BistochGrammar& g) {
    return {std::shared_ptr<void>{}, &g};
}

}  // namespace

TEST_CASE("square root of 1 - lambda") {
    const auto e = sqrt_one_minus(ex::x());
    CHECK(oracle_at(*e, 0.75).value == doctest::Approx(0.5));
    CHECK(oracle_at(*e, 0.5).value == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(oracle_at(*e, 0.0).value == 1.0);
    std::uint64_t seed = 1;
    for (const auto& [num, den] : {std::pair{1u, 4u}, std::pair{1u, 2u}, std::pair{3u, 4u}}) {
        const int n = 100000;
        const double lam = double(num) / den;
        CHECK(within_4sigma(buffon::testing::run_n(*e, ex::constant(num, den), n, seed++).p_hat,
                            std::sqrt(1 - lam), n));
    }
}

TEST_CASE("square-root walk cost is 2 lambda / (1 - lambda)") {
    BitSource src(5);
    const int n = 100000;
    double walk = 0;
    const Coin half = [&src] { return src.flip(); };
    for (int i = 0; i < n; ++i) {
        WalkCost cost;
        (void)machine::sqrt_one_minus(half, src, &cost);
        walk += static_cast<double>(cost.walk_flips);
    }
    CHECK(std::abs(walk / n - 2.0) < 0.1);
}

TEST_CASE("sqrt0 realizes sqrt(lambda)") {
    const int n = 100000;
    CHECK(within_4sigma(buffon::testing::run_n(*sqrt0(ex::constant(1, 4)), nullptr, n, 3).p_hat, 0.5, n));
}

TEST_CASE("binomial walks") {
    CHECK(oracle_at(*binom_walk(3, ex::x()), 0.5).value == doctest::Approx(0.52543).epsilon(1e-5));
    // t = 2 is the balanced walk with one step per lambda success: sqrt((1 - lam) / (1 + lam)).
    CHECK(oracle_at(*binom_walk(2, ex::x()), 0.5).value == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK(oracle_at(*binom_walk(4, ex::x()), 0.0).value == 1.0);
    CHECK(binomial_series(2, 0.25).value == doctest::Approx(1 / std::sqrt(0.75)).epsilon(1e-13));

    const int n = 100000;
    CHECK(within_4sigma(buffon::testing::run_n(*binom_walk(3, ex::flip()), nullptr, n, 4).p_hat, 0.52543, n));
    CHECK(within_4sigma(buffon::testing::run_n(*binom_walk(2, ex::flip()), nullptr, n, 5).p_hat,
                        std::sqrt(1.0 / 3.0), n));
    CHECK_THROWS_AS(binom_walk(1, ex::flip()), ExprError);
}

TEST_CASE("grammar membership by recursive descent") {
    const auto& y = ternary_tree_grammar();
    CHECK(grammar_membership(y, "T"));
    CHECK(grammar_membership(y, "HTTT"));
    CHECK_FALSE(grammar_membership(y, "HT"));
    CHECK_FALSE(grammar_membership(y, ""));
    CHECK_FALSE(grammar_membership(y, "TT"));
    CHECK(grammar_membership(y, "HHTTTTT"));
}

TEST_CASE("grammar word counts equal exhaustive acceptance counts") {
    for (const auto* g : shipped_grammars()) {
        INFO(g->name());
        const auto counts = g->word_counts(14);
        for (std::size_t len = 0; len <= 14; ++len) {
            std::uint64_t accepted = 0;
            for (std::uint64_t bits = 0; bits < (1ULL << len); ++bits) accepted += g->accepts(word_of(bits, len));
            CHECK(counts[len] == accepted);
        }
    }
    // Catalan numbers at odd lengths for the binary-tree code.
    const auto d = binary_tree_grammar().word_counts(9);
    CHECK(d[1] == 1);
    CHECK(d[3] == 1);
    CHECK(d[5] == 2);
    CHECK(d[7] == 5);
    CHECK(d[9] == 14);
}

TEST_CASE("grammar machine law is (1 - lambda) S(lambda / 2)") {
    // Y = z + z Y^3 at z = 1/4, by fixed point.
    double y = 0;
    for (int i = 0; i < 200; ++i) y = 0.25 + 0.25 * y * y * y;
    const auto ternary = grammar_bernoulli(borrow(ternary_tree_grammar()), ex::flip());
    CHECK(oracle_value(*ternary, nullptr).value == doctest::Approx(0.5 * y).epsilon(1e-12));
    CHECK(0.5 * y == doctest::Approx(0.127).epsilon(0.01));

    const double d = (1 - std::sqrt(1 - 4 * 0.0625)) / 0.5;
    const auto binary = grammar_bernoulli(borrow(binary_tree_grammar()), ex::flip());
    CHECK(oracle_value(*binary, nullptr).value == doctest::Approx(0.5 * d).epsilon(1e-12));

    const int n = 100000;
    CHECK(within_4sigma(buffon::testing::run_n(*ternary, nullptr, n, 6).p_hat, 0.5 * y, n));
    CHECK(within_4sigma(buffon::testing::run_n(*binary, nullptr, n, 7).p_hat, 0.5 * d, n));
    const auto mixed = grammar_bernoulli(borrow(mixed_grammar()), ex::constant(2, 3));
    const double want = oracle_value(*mixed, nullptr).value;
    CHECK(within_4sigma(buffon::testing::run_n(*mixed, nullptr, n, 8).p_hat, want, n));
}

TEST_CASE("grammar text format") {
    const auto g = BistochGrammar::parse("# comment\nS -> H S B | T  # trailing\nB -> H | T S\n", "custom");
    CHECK(g.size() == 2);
    CHECK(BistochGrammar::parse(g.to_text(), "custom") == g);
    CHECK_THROWS_AS(BistochGrammar::parse("S -> H Q | T\n"), GrammarError);
    CHECK_THROWS_AS(BistochGrammar::parse("S -> H S\n"), GrammarError);
    CHECK_THROWS_AS(BistochGrammar::parse("S -> T\nS -> H\n"), GrammarError);
    try {
        BistochGrammar::parse("S -> T\n\nX -> H Y\n");
        FAIL("expected a grammar error");
    } catch (const GrammarError& err) {
        CHECK(err.line() == 3);
    }
}

TEST_CASE("ramanujan machine for 1/pi") {
    CHECK(rama_series().value == doctest::Approx(1 / M_PI).epsilon(1e-14));
    const int n = 100000;
    const auto stats = buffon::testing::run_n(*rama_inv_pi(), nullptr, n, 10);
    CHECK(std::abs(stats.p_hat - 1 / M_PI) < 0.006);

    // T = 0 with probability (3/4)^2 (4/9) = 1/4, the same draw the machine makes.
    BitSource src(11);
    const Coin quarter = [&src] { return machine::bernoulli_rational(1, 4, src); };
    int zero = 0;
    for (int i = 0; i < n; ++i) {
        const auto t = machine::geometric(quarter) + machine::geometric(quarter) +
                       (machine::bernoulli_rational(5, 9, src) ? 1 : 0);
        zero += t == 0;
    }
    CHECK(within_4sigma(zero / double(n), 0.25, n));
    // An empty walk always balances.
    CHECK(machine::balanced_walk(0, src));
}

TEST_CASE("swapping the 5/9 machine keeps the law") {
    // Another exact Bernoulli(5/9): 1 - 4/9 with 4/9 from its own expansion.
    const int n = 100000;
    BitSource a(12);
    BitSource b(13);
    int ones_a = 0;
    int ones_b = 0;
    for (int i = 0; i < n; ++i) {
        ones_a += machine::rama(a);
        ones_b += machine::rama_with(b, [&b] { return !machine::bernoulli_rational(4, 9, b); });
    }
    // Two-sample chi-square on a 2x2 table, 1 dof: statistic < 10.83 at the 0.001 level.
    const double pa = ones_a / double(n);
    const double pb = ones_b / double(n);
    const double pooled = (ones_a + ones_b) / (2.0 * n);
    const double stat = (pa - pb) * (pa - pb) / (pooled * (1 - pooled) * (2.0 / n));
    CHECK(stat < 10.83);
}
