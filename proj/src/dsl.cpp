#include "buffon/dsl.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <map>

#include "buffon/bags.hpp"
#include "buffon/registry.hpp"
#include "buffon/von_neumann.hpp"
#include "buffon/walks.hpp"

namespace buffon {

namespace {

using Builder = std::function<ExprPtr(ExprPtr)>;

const std::map<std::string, Builder, std::less<>>& unary_forms() {
    static const auto table = [] {
        std::map<std::string, Builder, std::less<>> t{
            {"not", [](ExprPtr e) { return ex::complement(std::move(e)); }},
            {"even", [](ExprPtr e) { return ex::even(std::move(e)); }},
            {"sq", [](ExprPtr e) { return ex::square(std::move(e)); }},
            {"expn", [](ExprPtr e) { return ex::vn_value(PermClass::Sorted, 0, std::move(e)); }},
            {"sqrt1m", [](ExprPtr e) { return ex::sqrt1m(std::move(e)); }},
            {"sqrt0", [](ExprPtr e) { return sqrt0(std::move(e)); }},
            {"int1", [](ExprPtr e) { return ex::int1(std::move(e)); }},
        };
        const auto sugar = [&t](const std::string& name, ExprPtr machine) {
            t.emplace(name, [machine](ExprPtr e) { return ex::compose(machine, std::move(e)); });
        };
        sugar("log1p", log1p_machine());
        sugar("atan", atan_machine());
        sugar("asin_half", asin_half_machine());
        sugar("erf_int", erf_integral_machine());
        for (auto name : transcendental_names()) sugar(std::string(name), transcendental_machine(name));
        return t;
    }();
    return table;
}

class Parser {
public:
    Parser(std::string_view text, const ParseContext& ctx) : text_(text), ctx_(ctx) {}

    ExprPtr parse_all() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "' after expression");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::size_t at) const {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(what, line, column);
    }
    [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c, const std::string& context) {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input, expected '" + std::string(1, c) + "' " + context);
        if (text_[pos_] != c) {
            if (c == ')' && text_[pos_] == ',') fail("arity mismatch: too many arguments " + context);
            if (c == ',' && text_[pos_] == ')') fail("arity mismatch: too few arguments " + context);
            fail("expected '" + std::string(1, c) + "' " + context + ", found '" + std::string(1, text_[pos_]) + "'");
        }
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
            pos_ = start;
            if (pos_ >= text_.size()) fail("unexpected end of input, expected an expression");
            fail("expected an expression, found '" + std::string(1, text_[pos_]) + "'");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t integer() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        std::uint64_t value = 0;
        const auto* first = text_.data() + start;
        const auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
        if (ec != std::errc{}) fail("integer out of range", start);
        return value;
    }

    ExprPtr parse_expr() {
        skip_ws();
        const auto start = pos_;
        const std::string name = identifier();
        const std::string ctx = "in " + name + "(...)";

        const auto no_args = [&](ExprPtr e) {
            if (peek('(')) fail("arity mismatch: " + name + " takes no arguments");
            return e;
        };
        const auto args = [&](std::size_t count) {
            expect('(', "after " + name);
            std::vector<ExprPtr> out;
            for (std::size_t i = 0; i < count; ++i) {
                if (i > 0) expect(',', ctx);
                out.push_back(parse_expr());
            }
            expect(')', ctx);
            return out;
        };

        if (name == "x") return no_args(ex::x());
        if (name == "flip") return no_args(ex::flip());
        if (name == "third") return no_args(ex::third());
        if (name == "rama") return no_args(ex::rama());
        if (name == "const") {
            expect('(', "after const");
            const auto at = pos_;
            const auto num = integer();
            expect('/', "in const(a/b)");
            const auto den = integer();
            expect(')', "in const(a/b)");
            if (den == 0) fail("constant has zero denominator", at);
            if (num > den) fail("constant " + std::to_string(num) + "/" + std::to_string(den) + " is outside [0,1]", at);
            try {
                return ex::constant(num, den);
            } catch (const ExprError& err) {
                fail(err.what(), at);
            }
        }
        if (name == "and" || name == "prod") {
            auto a = args(2);
            return ex::conj(a[0], a[1]);
        }
        if (name == "or") {
            auto a = args(2);
            return ex::disj(a[0], a[1]);
        }
        if (name == "mean") {
            auto a = args(2);
            return ex::mean(a[0], a[1]);
        }
        if (name == "compose") {
            auto a = args(2);
            return ex::compose(a[0], a[1]);
        }
        if (name == "cond") {
            auto a = args(3);
            return ex::cond(a[0], a[1], a[2]);
        }
        if (name == "polylog" || name == "walk") {
            expect('(', "after " + name);
            const auto at = pos_;
            const auto k = integer();
            expect(',', ctx);
            auto lam = parse_expr();
            expect(')', ctx);
            try {
                return name == "polylog" ? ex::polylog(k, lam) : ex::binom_walk(k, lam);
            } catch (const ExprError& err) {
                fail(err.what(), at);
            }
        }
        if (name == "vnvalue" || name == "vniter") {
            expect('(', "after " + name);
            const auto at = pos_;
            const auto cls_name = identifier();
            const auto cls = perm_class_from_string(cls_name);
            if (!cls) fail("unknown permutation class '" + cls_name + "'", at);
            expect(',', ctx);
            const auto k_at = pos_;
            const auto k = integer();
            expect(',', ctx);
            auto lam = parse_expr();
            expect(')', ctx);
            try {
                return name == "vnvalue" ? ex::vn_value(*cls, k, lam) : ex::vn_iter(*cls, k, lam);
            } catch (const ExprError& err) {
                fail(err.what(), k_at);
            }
        }
        if (const auto it = unary_forms().find(name); it != unary_forms().end()) {
            return it->second(args(1)[0]);
        }
        for (const auto& g : ctx_.grammars) {
            if (g && g->name() == name) return ex::grammar(g, args(1)[0]);
        }
        if (const auto* g = find_shipped_grammar(name)) {
            // Shipped grammars live for the whole program.
            return ex::grammar(std::shared_ptr<const BistochGrammar>(std::shared_ptr<void>{}, g), args(1)[0]);
        }
        if (const auto* m = find_named(name)) return no_args(m->expr);
        fail("unknown identifier '" + name + "'", start);
    }

    std::string_view text_;
    const ParseContext& ctx_;
    std::size_t pos_ = 0;
};

void print_to(const Expr& e, std::string& out) {
    const auto call = [&](const char* name, std::initializer_list<const Expr*> args) {
        out += name;
        out += '(';
        bool first = true;
        for (const auto* a : args) {
            if (!first) out += ", ";
            print_to(*a, out);
            first = false;
        }
        out += ')';
    };
    switch (e.kind) {
        case Kind::Var: out += "x"; return;
        case Kind::Flip: out += "flip"; return;
        case Kind::Third: out += "third"; return;
        case Kind::Rama: out += "rama"; return;
        case Kind::Const:
            out += "const(" + std::to_string(e.num) + "/" + std::to_string(e.den) + ")";
            return;
        case Kind::Not: call("not", {&e.arg(0)}); return;
        case Kind::And: call("and", {&e.arg(0), &e.arg(1)}); return;
        case Kind::Or: call("or", {&e.arg(0), &e.arg(1)}); return;
        case Kind::Mean: call("mean", {&e.arg(0), &e.arg(1)}); return;
        case Kind::Cond: call("cond", {&e.arg(0), &e.arg(1), &e.arg(2)}); return;
        case Kind::Even: call("even", {&e.arg(0)}); return;
        case Kind::Sq: call("sq", {&e.arg(0)}); return;
        case Kind::Compose: call("compose", {&e.arg(0), &e.arg(1)}); return;
        case Kind::Sqrt1m: call("sqrt1m", {&e.arg(0)}); return;
        case Kind::Int1: call("int1", {&e.arg(0)}); return;
        case Kind::VnValue:
            if (e.perm == PermClass::Sorted && e.param == 0) {
                call("expn", {&e.arg(0)});
                return;
            }
            [[fallthrough]];
        case Kind::VnIter:
            out += e.kind == Kind::VnValue ? "vnvalue(" : "vniter(";
            out += std::string(to_string(e.perm)) + ", " + std::to_string(e.param) + ", ";
            print_to(e.arg(0), out);
            out += ')';
            return;
        case Kind::Polylog:
        case Kind::BinomWalk:
            out += e.kind == Kind::Polylog ? "polylog(" : "walk(";
            out += std::to_string(e.param) + ", ";
            print_to(e.arg(0), out);
            out += ')';
            return;
        case Kind::Grammar:
            call(e.grammar->name().c_str(), {&e.arg(0)});
            return;
    }
}

}  // namespace

ExprPtr parse(std::string_view text, const ParseContext& ctx) { return Parser(text, ctx).parse_all(); }

std::string print(const Expr& e) {
    std::string out;
    print_to(e, out);
    return out;
}

}  // namespace buffon
