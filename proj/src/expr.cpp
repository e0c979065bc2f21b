#include "buffon/expr.hpp"

#include "buffon/grammar.hpp"

namespace buffon {

namespace {

ExprPtr node(Kind kind, std::vector<ExprPtr> args = {}) {
    for (const auto& a : args) {
        if (!a) throw ExprError("null sub-expression");
    }
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = std::move(args);
    return e;
}

ExprPtr with_param(Kind kind, std::uint64_t param, ExprPtr lam) {
    auto e = std::const_pointer_cast<Expr>(node(kind, {std::move(lam)}));
    e->param = param;
    return e;
}

}  // namespace

bool operator==(const Expr& lhs, const Expr& rhs) {
    if (lhs.kind != rhs.kind || lhs.args.size() != rhs.args.size()) return false;
    switch (lhs.kind) {
        case Kind::Const:
            if (lhs.num != rhs.num || lhs.den != rhs.den) return false;
            break;
        case Kind::VnValue:
        case Kind::VnIter:
            if (lhs.perm != rhs.perm || lhs.param != rhs.param) return false;
            break;
        case Kind::Polylog:
        case Kind::BinomWalk:
            if (lhs.param != rhs.param) return false;
            break;
        case Kind::Grammar:
            if (!lhs.grammar || !rhs.grammar || !(*lhs.grammar == *rhs.grammar)) return false;
            break;
        default:
            break;
    }
    for (std::size_t i = 0; i < lhs.args.size(); ++i) {
        if (lhs.args[i] != rhs.args[i] && !(*lhs.args[i] == *rhs.args[i])) return false;
    }
    return true;
}

bool has_free_var(const Expr& e) {
    switch (e.kind) {
        case Kind::Var:
            return true;
        case Kind::Compose:
            return has_free_var(e.arg(1));
        default:
            for (const auto& a : e.args) {
                if (has_free_var(*a)) return true;
            }
            return false;
    }
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& a : e.args) n += node_count(*a);
    return n;
}

namespace ex {

ExprPtr x() {
    static const ExprPtr var = node(Kind::Var);
    return var;
}

ExprPtr flip() {
    static const ExprPtr f = node(Kind::Flip);
    return f;
}

ExprPtr constant(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw ExprError("constant denominator must be positive");
    if (num > den) throw ExprError("constant " + std::to_string(num) + "/" + std::to_string(den) +
                                   " is outside [0,1]");
    if (den >> 63) throw ExprError("constant denominator must be below 2^63");
    auto e = std::const_pointer_cast<Expr>(node(Kind::Const));
    e->num = num;
    e->den = den;
    return e;
}

ExprPtr third() { return node(Kind::Third); }
ExprPtr rama() { return node(Kind::Rama); }
ExprPtr complement(ExprPtr e) { return node(Kind::Not, {std::move(e)}); }
ExprPtr conj(ExprPtr lhs, ExprPtr rhs) { return node(Kind::And, {std::move(lhs), std::move(rhs)}); }
ExprPtr disj(ExprPtr lhs, ExprPtr rhs) { return node(Kind::Or, {std::move(lhs), std::move(rhs)}); }
ExprPtr mean(ExprPtr lhs, ExprPtr rhs) { return node(Kind::Mean, {std::move(lhs), std::move(rhs)}); }

ExprPtr cond(ExprPtr r, ExprPtr p, ExprPtr q) {
    return node(Kind::Cond, {std::move(r), std::move(p), std::move(q)});
}

ExprPtr even(ExprPtr e) { return node(Kind::Even, {std::move(e)}); }
ExprPtr square(ExprPtr e) { return node(Kind::Sq, {std::move(e)}); }

ExprPtr compose(ExprPtr outer, ExprPtr inner) {
    return node(Kind::Compose, {std::move(outer), std::move(inner)});
}

ExprPtr vn_value(PermClass c, std::uint64_t a, ExprPtr lam) {
    auto e = std::const_pointer_cast<Expr>(with_param(Kind::VnValue, a, std::move(lam)));
    e->perm = c;
    return e;
}

ExprPtr vn_iter(PermClass c, std::uint64_t b, ExprPtr lam) {
    if (b == 0) throw ExprError("iteration count must be >= 1");
    auto e = std::const_pointer_cast<Expr>(with_param(Kind::VnIter, b, std::move(lam)));
    e->perm = c;
    return e;
}

ExprPtr polylog(std::uint64_t r, ExprPtr lam) {
    if (r == 0) throw ExprError("polylog order must be >= 1");
    return with_param(Kind::Polylog, r, std::move(lam));
}

ExprPtr sqrt1m(ExprPtr lam) { return node(Kind::Sqrt1m, {std::move(lam)}); }

ExprPtr binom_walk(std::uint64_t t, ExprPtr lam) {
    if (t < 2) throw ExprError("walk step t must be >= 2");
    return with_param(Kind::BinomWalk, t, std::move(lam));
}

ExprPtr grammar(std::shared_ptr<const BistochGrammar> g, ExprPtr lam) {
    if (!g) throw ExprError("null grammar");
    auto e = std::const_pointer_cast<Expr>(node(Kind::Grammar, {std::move(lam)}));
    e->grammar = std::move(g);
    return e;
}

ExprPtr int1(ExprPtr body) { return node(Kind::Int1, {std::move(body)}); }

}  // namespace ex

}  // namespace buffon
