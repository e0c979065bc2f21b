#pragma once

#include <cmath>
#include <cstdint>

#include "buffon/runner.hpp"

namespace buffon::testing {

/// |p_hat - p| <= 4 sqrt(p (1 - p) / n), with a floor for p at 0 or 1.
inline bool within_4sigma(double p_hat, double p, std::uint64_t n) {
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
    return std::abs(p_hat - p) <= 4.0 * sigma;
}

inline RunStats run_n(const Expr& e, const ExprPtr& binding, std::uint64_t n, std::uint64_t seed) {
    RunOptions opts;
    opts.n = n;
    opts.seed = seed;
    return run(e, binding, opts);
}

}  // namespace buffon::testing

#include <random>

#include "buffon/expr.hpp"
#include "buffon/grammar.hpp"

namespace buffon::testing {

/// Small random expressions in x. Arguments of looping machines are
/// averaged with 0 so their input stays at most 1/2 and every sample halts
/// with a short expected cost.
class AstGenerator {
public:
    explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

    ExprPtr expr(int depth) {
        if (depth <= 0) return leaf();
        switch (pick(16)) {
            case 0: return leaf();
            case 1: return ex::complement(expr(depth - 1));
            case 2: return ex::conj(expr(depth - 1), expr(depth - 1));
            case 3: return ex::disj(expr(depth - 1), expr(depth - 1));
            case 4: return ex::mean(expr(depth - 1), expr(depth - 1));
            case 5: return ex::cond(expr(depth - 1), expr(depth - 1), expr(depth - 1));
            case 6: return ex::even(damped(depth - 1));
            case 7: return ex::square(expr(depth - 1));
            case 8: return ex::vn_value(PermClass::Sorted, pick(2), damped(depth - 1));
            case 9: return ex::vn_iter(PermClass::RecordFirstMax, 1 + pick(2), damped(depth - 1));
            case 10: return ex::polylog(1 + pick(3), damped(depth - 1));
            case 11: return ex::sqrt1m(damped(depth - 1));
            case 12: return ex::binom_walk(2 + pick(2), damped(depth - 1));
            case 13: return ex::grammar(shipped(), damped(depth - 1));
            case 14: return ex::int1(expr(depth - 1));
            default: return ex::compose(expr(depth - 1), expr(depth - 1));
        }
    }

    /// A closed binding: flip, third or a small rational.
    ExprPtr binding() {
        switch (pick(3)) {
            case 0: return ex::flip();
            case 1: return ex::third();
            default: {
                const auto den = 2 + pick(7);
                return ex::constant(pick(den + 1), den);
            }
        }
    }

private:
    std::uint64_t pick(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

    ExprPtr leaf() {
        switch (pick(4)) {
            case 0:
            case 1: return ex::x();
            case 2: return ex::flip();
            default: {
                const auto den = 1 + pick(8);
                return ex::constant(pick(den + 1), den);
            }
        }
    }

    ExprPtr damped(int depth) { return ex::mean(expr(depth), ex::constant(0, 1)); }

    std::shared_ptr<const BistochGrammar> shipped() {
        const auto& all = shipped_grammars();
        const auto* g = all[pick(all.size())];
        return std::shared_ptr<const BistochGrammar>(std::shared_ptr<void>{}, g);
    }

    std::mt19937_64 rng_;
};

}  // namespace buffon::testing
