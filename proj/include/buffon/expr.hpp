#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "buffon/perm_class.hpp"

namespace buffon {

class BistochGrammar;

/// Node kinds of a unary Buffon construction.
///
/// Every expression denotes a function of the single free variable x with
/// values in [0,1]; closed expressions denote constants.
enum class Kind {
    Var,        ///< the free variable x
    Flip,       ///< 1/2
    Const,      ///< a/b via the lazy binary expansion
    Third,      ///< 1/3 via the two-flip Markov chain
    Rama,       ///< 1/pi, ballot-walk machine
    Not,        ///< 1 - p
    And,        ///< p q
    Or,         ///< p + q - p q
    Mean,       ///< (p + q) / 2
    Cond,       ///< r p + (1 - r) q
    Even,       ///< 1 / (1 + p)
    Sq,         ///< p^2, two independent calls
    Compose,    ///< f(g(x)): g's output feeds f's input
    VnValue,    ///< von Neumann schema, success when N == param
    VnIter,     ///< von Neumann schema, success when the trial count K == param
    Polylog,    ///< ((1-x)/x) Li_r(x)
    Sqrt1m,     ///< sqrt(1 - x), balanced pair walk
    BinomWalk,  ///< (1-x) S_t(x/2), +(t-1)/-1 walk
    Grammar,    ///< (1-x) S(x/2) for a bistoch grammar's OGF S
    Int1,       ///< (1/x) integral_0^x f, one geometric bag per sample
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST node. Build through the functions in namespace `ex`.
struct Expr {
    Kind kind = Kind::Var;
    std::vector<ExprPtr> args;
    std::uint64_t num = 0;    ///< Const numerator
    std::uint64_t den = 1;    ///< Const denominator
    std::uint64_t param = 0;  ///< a for VnValue, b for VnIter, r for Polylog, t for BinomWalk
    PermClass perm = PermClass::All;
    std::shared_ptr<const BistochGrammar> grammar;

    const Expr& arg(std::size_t i) const { return *args.at(i); }
};

class ExprError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

bool operator==(const Expr& lhs, const Expr& rhs);

/// True when the expression mentions x outside of a Compose argument
/// position that rebinds it.
bool has_free_var(const Expr& e);

/// Number of nodes, counting shared subtrees once per occurrence.
std::size_t node_count(const Expr& e);

/// Node constructors. Each validates its own arguments and throws ExprError.
namespace ex {

ExprPtr x();
ExprPtr flip();
ExprPtr constant(std::uint64_t num, std::uint64_t den);
ExprPtr third();
ExprPtr rama();
ExprPtr complement(ExprPtr e);
ExprPtr conj(ExprPtr lhs, ExprPtr rhs);
ExprPtr disj(ExprPtr lhs, ExprPtr rhs);
ExprPtr mean(ExprPtr lhs, ExprPtr rhs);
ExprPtr cond(ExprPtr r, ExprPtr p, ExprPtr q);
ExprPtr even(ExprPtr e);
ExprPtr square(ExprPtr e);
ExprPtr compose(ExprPtr outer, ExprPtr inner);
ExprPtr vn_value(PermClass c, std::uint64_t a, ExprPtr lam);
ExprPtr vn_iter(PermClass c, std::uint64_t b, ExprPtr lam);
ExprPtr polylog(std::uint64_t r, ExprPtr lam);
ExprPtr sqrt1m(ExprPtr lam);
ExprPtr binom_walk(std::uint64_t t, ExprPtr lam);
ExprPtr grammar(std::shared_ptr<const BistochGrammar> g, ExprPtr lam);
ExprPtr int1(ExprPtr body);

}  // namespace ex

}  // namespace buffon
