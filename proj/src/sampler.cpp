#include "buffon/sampler.hpp"

#include "buffon/bags.hpp"
#include "buffon/von_neumann.hpp"
#include "buffon/walks.hpp"

namespace buffon {

namespace {

// What x means at a given point of the tree. A Compose pushes a frame whose
// x is the inner expression (run in the parent frame); an Int1 pushes a
// frame whose x is "bag digit, then the parent's x".
struct Frame {
    const Expr* arg = nullptr;
    const Frame* parent = nullptr;
    GeometricBag* bag = nullptr;
};

bool run(const Expr& e, const Frame* frame, BitSource& src);

bool run_var(const Frame* frame, BitSource& src) {
    if (!frame || (!frame->arg && !frame->bag)) throw ExprError("x is unbound");
    if (frame->bag) {
        if (!frame->bag->sample(src)) return false;
        return run_var(frame->parent, src);
    }
    return run(*frame->arg, frame->parent, src);
}

bool run(const Expr& e, const Frame* frame, BitSource& src) {
    const auto coin = [&](std::size_t i) -> Coin {
        const Expr* sub = e.args.at(i).get();
        return [sub, frame, &src] { return run(*sub, frame, src); };
    };
    switch (e.kind) {
        case Kind::Var:
            return run_var(frame, src);
        case Kind::Flip:
            return src.flip();
        case Kind::Const:
            return machine::bernoulli_rational(e.num, e.den, src);
        case Kind::Third:
            return machine::bernoulli_third_markov(src);
        case Kind::Rama:
            return machine::rama(src);
        case Kind::Not:
            return !run(e.arg(0), frame, src);
        case Kind::And:
            return run(e.arg(0), frame, src) && run(e.arg(1), frame, src);
        case Kind::Or:
            return run(e.arg(0), frame, src) || run(e.arg(1), frame, src);
        case Kind::Mean:
            return src.flip() ? run(e.arg(0), frame, src) : run(e.arg(1), frame, src);
        case Kind::Cond:
            return run(e.arg(0), frame, src) ? run(e.arg(1), frame, src) : run(e.arg(2), frame, src);
        case Kind::Even:
            return machine::even_parity(coin(0));
        case Kind::Sq:
            return run(e.arg(0), frame, src) && run(e.arg(0), frame, src);
        case Kind::Compose: {
            const Frame inner{&e.arg(1), frame, nullptr};
            return run(e.arg(0), &inner, src);
        }
        case Kind::VnValue:
            return machine::vn_value(e.perm, e.param, coin(0), src);
        case Kind::VnIter:
            return machine::vn_iter(e.perm, e.param, coin(0), src);
        case Kind::Polylog:
            return machine::polylog(e.param, coin(0), src);
        case Kind::Sqrt1m:
            return machine::sqrt_one_minus(coin(0), src);
        case Kind::BinomWalk:
            return machine::binom_walk(e.param, coin(0), src);
        case Kind::Grammar:
            return machine::grammar_word(*e.grammar, coin(0), src);
        case Kind::Int1: {
            GeometricBag bag;
            const Frame inner{nullptr, frame, &bag};
            return run(e.arg(0), &inner, src);
        }
    }
    throw ExprError("unknown node kind");
}

}  // namespace

SampleResult sample_bernoulli(const Expr& e, const ExprPtr& binding, BitSource& src,
                              std::optional<std::uint64_t> budget) {
    const auto before = src.flip_count();
    const Frame root{binding.get(), nullptr, nullptr};
    if (!budget) {
        const bool bit = run(e, &root, src);
        return {bit ? 1u : 0u, src.flip_count() - before, false};
    }
    src.set_limit(before + *budget);
    try {
        const bool bit = run(e, &root, src);
        src.clear_limit();
        return {bit ? 1u : 0u, src.flip_count() - before, false};
    } catch (const FlipBudgetExceeded&) {
        src.clear_limit();
        return {0, src.flip_count() - before, true};
    }
}

Coin make_coin(const Expr& e, const ExprPtr& binding, BitSource& src) {
    return [&e, &binding, &src] {
        const Frame root{binding.get(), nullptr, nullptr};
        return run(e, &root, src);
    };
}

}  // namespace buffon
