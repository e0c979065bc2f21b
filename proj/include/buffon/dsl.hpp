#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "buffon/expr.hpp"
#include "buffon/grammar.hpp"

namespace buffon {

/// Parse failure with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Extra grammars the parser should accept as unary forms, in addition to
/// the shipped ones.
struct ParseContext {
    std::vector<std::shared_ptr<const BistochGrammar>> grammars;
};

/// Construction language, one expression per string:
///
///   expr := "x" | "flip" | "third" | "rama" | "const(" INT "/" INT ")"
///         | UNARY "(" expr ")" | BINARY "(" expr "," expr ")"
///         | "cond(" expr "," expr "," expr ")" | "compose(" expr "," expr ")"
///         | "polylog(" INT "," expr ")" | "walk(" INT "," expr ")"
///         | "vnvalue(" CLASS "," INT "," expr ")" | "vniter(" CLASS "," INT "," expr ")"
///         | NAME
///
///   UNARY  := not | even | sq | expn | sqrt1m | sqrt0 | int1
///           | log1p | atan | asin_half | erf_int | a transcendental name
///           | a grammar name (binary, ternary, mixed, ...)
///   BINARY := and | prod | or | mean
///   NAME   := a registered closed machine (pi8, rama, zeta2, ...)
///
/// log1p, atan, asin_half, erf_int and the transcendental names stand for
/// compose(machine, expr); sqrt0(e) is sqrt1m(not(e)); expn(e) is
/// vnvalue(sorted, 0, e). Whitespace is free.
ExprPtr parse(std::string_view text, const ParseContext& ctx = {});

/// Canonical text. parse(print(e)) == e for every expression whose grammars
/// are known to the parser.
std::string print(const Expr& e);

}  // namespace buffon
