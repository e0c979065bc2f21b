#include "buffon/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "buffon/grammar.hpp"
#include "buffon/von_neumann.hpp"

namespace buffon {

namespace {

constexpr double kSeriesTolerance = 1e-15;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Propagate an input uncertainty through f by probing both ends of the band.
OracleValue apply(const std::function<double(double)>& f, OracleValue in, double own_error = 0.0) {
    const double v = clamp01(in.value);
    const double y = f(v);
    double spread = 0.0;
    if (in.error_bound > 0.0) {
        spread = std::max(std::abs(f(clamp01(v + in.error_bound)) - y),
                          std::abs(f(clamp01(v - in.error_bound)) - y));
    }
    return {y, spread + own_error};
}

struct Quadrature {
    double value = 0.0;
    double error = 0.0;
};

Quadrature simpson_step(const std::function<OracleValue(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth, double& worst) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const auto flm = f(lm);
    const auto frm = f(rm);
    worst = std::max({worst, flm.error_bound, frm.error_bound});
    const double h = (b - a) / 12.0;
    const double left = h * (fa + 4.0 * flm.value + fm);
    const double right = h * (fm + 4.0 * frm.value + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
        return {left + right + diff / 15.0, std::abs(diff) / 15.0};
    }
    const auto l = simpson_step(f, a, m, fa, flm.value, fm, left, tol / 2.0, depth - 1, worst);
    const auto r = simpson_step(f, m, b, fm, frm.value, fb, right, tol / 2.0, depth - 1, worst);
    return {l.value + r.value, l.error + r.error};
}

// Integral over [0,1] of an integrand that carries its own error bound.
OracleValue integrate(const std::function<OracleValue(double)>& f, const OracleOptions& opts) {
    double worst = 0.0;
    if (opts.rule == QuadratureRule::GaussKronrod) {
        double estimate = 0.0;
        const auto plain = [&](double u) {
            const auto v = f(u);
            worst = std::max(worst, v.error_bound);
            return v.value;
        };
        const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            plain, 0.0, 1.0, 15, opts.tolerance, &estimate);
        return {value, estimate + worst};
    }
    const auto f0 = f(0.0);
    const auto f1 = f(1.0);
    const auto fm = f(0.5);
    worst = std::max({f0.error_bound, f1.error_bound, fm.error_bound});
    const double whole = (f0.value + 4.0 * fm.value + f1.value) / 6.0;
    const auto q = simpson_step(f, 0.0, 1.0, f0.value, fm.value, f1.value, whole, opts.tolerance, 40, worst);
    return {q.value, q.error + worst};
}

double vn_value_law(PermClass c, std::uint64_t a, double v) {
    if (v <= 0.0) {
        // Only the smallest index the class allows survives.
        const std::uint64_t lowest = (c == PermClass::RecordFirstMax || c == PermClass::AlternatingOdd) ? 1 : 0;
        return a == lowest ? 1.0 : 0.0;
    }
    if (v >= 1.0 && (c == PermClass::All || c == PermClass::RecordFirstMax)) return 0.0;
    return vn_probability(c, v, a);
}

double vn_iter_law(PermClass c, std::uint64_t b, double v) {
    // At the ends a trial succeeds iff the class holds the empty (v = 0) or
    // every (v = 1) order type; classes without size 0 give up after b trials.
    double s = 0.0;
    if (v <= 0.0) {
        s = class_coefficient(c, 0);
    } else if (v >= 1.0) {
        s = c == PermClass::All ? 1.0 : 0.0;
    } else {
        s = std::min(1.0, trial_success_rate(c, v));
    }
    return std::pow(1.0 - s, static_cast<double>(b - 1)) * s;
}

OracleValue grammar_value(const BistochGrammar& g, double v) {
    if (v <= 0.0) return {g.accepts("") ? 1.0 : 0.0, 0.0};
    if (v >= 1.0) return {0.0, 0.0};
    // S_n <= 2^n, so the tail after N is at most (1-v) sum_{n>N} v^n <= v^(N+1).
    const double want = std::log(kSeriesTolerance) / std::log(v);
    const std::size_t terms = static_cast<std::size_t>(std::clamp(want, 16.0, 3000.0));
    const auto a = g.scaled_counts(v / 2.0, terms);
    double sum = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) sum += *it;
    return {(1.0 - v) * sum, std::pow(v, static_cast<double>(terms + 1))};
}

class Evaluator {
public:
    explicit Evaluator(const OracleOptions& opts) : opts_(opts) {}

    OracleValue eval(const Expr& e, const OracleValue* x) const {
        const auto unary = [&](const std::function<double(double)>& f, double own = 0.0) {
            return apply(f, eval(e.arg(0), x), own);
        };
        switch (e.kind) {
            case Kind::Var:
                if (!x) throw ExprError("x is unbound");
                return *x;
            case Kind::Flip:
                return {0.5, 0.0};
            case Kind::Const:
                return {static_cast<double>(e.num) / static_cast<double>(e.den),
                        std::ldexp(static_cast<double>(e.num) / static_cast<double>(e.den), -52)};
            case Kind::Third:
                return {1.0 / 3.0, 1e-16};
            case Kind::Rama:
                return rama_series();
            case Kind::Not:
                return unary([](double v) { return 1.0 - v; });
            case Kind::And:
            case Kind::Or:
            case Kind::Mean: {
                const auto p = eval(e.arg(0), x);
                const auto q = eval(e.arg(1), x);
                const double err = p.error_bound + q.error_bound;
                if (e.kind == Kind::And) return {p.value * q.value, err};
                if (e.kind == Kind::Or) return {p.value + q.value - p.value * q.value, err};
                return {0.5 * (p.value + q.value), 0.5 * err};
            }
            case Kind::Cond: {
                const auto r = eval(e.arg(0), x);
                const auto p = eval(e.arg(1), x);
                const auto q = eval(e.arg(2), x);
                return {r.value * p.value + (1.0 - r.value) * q.value,
                        r.error_bound + std::max(p.error_bound, q.error_bound)};
            }
            case Kind::Even:
                return unary([](double v) { return 1.0 / (1.0 + v); });
            case Kind::Sq: {
                const auto p = eval(e.arg(0), x);
                return {p.value * p.value, 2.0 * p.error_bound};
            }
            case Kind::Compose: {
                const auto inner = eval(e.arg(1), x);
                return eval(e.arg(0), &inner);
            }
            case Kind::VnValue:
                return unary([&](double v) { return vn_value_law(e.perm, e.param, v); }, 1e-14);
            case Kind::VnIter:
                return unary([&](double v) { return vn_iter_law(e.perm, e.param, v); }, 1e-14);
            case Kind::Polylog: {
                const auto in = eval(e.arg(0), x);
                const auto f = [&](double v) {
                    if (v <= 0.0) return 1.0;
                    if (v >= 1.0) return 0.0;
                    return (1.0 - v) / v * polylog_series(e.param, v).value;
                };
                const double v = clamp01(in.value);
                const double own = (v <= 0.0 || v >= 1.0) ? 0.0 : polylog_series(e.param, v).error_bound / v;
                return apply(f, in, own);
            }
            case Kind::Sqrt1m:
                return unary([](double v) { return std::sqrt(1.0 - v); });
            case Kind::BinomWalk: {
                const auto in = eval(e.arg(0), x);
                const auto f = [&](double v) {
                    if (v >= 1.0) return 0.0;
                    return (1.0 - v) * binomial_series(e.param, v / 2.0).value;
                };
                const double v = clamp01(in.value);
                const double own = v >= 1.0 ? 0.0 : (1.0 - v) * binomial_series(e.param, v / 2.0).error_bound;
                return apply(f, in, own);
            }
            case Kind::Grammar: {
                const auto in = eval(e.arg(0), x);
                const auto f = [&](double v) { return grammar_value(*e.grammar, v).value; };
                return apply(f, in, grammar_value(*e.grammar, clamp01(in.value)).error_bound);
            }
            case Kind::Int1: {
                // (1/x) int_0^x body(w) dw = int_0^1 body(x u) du.
                if (!has_free_var(e.arg(0))) return eval(e.arg(0), nullptr);
                if (!x) throw ExprError("x is unbound");
                const OracleValue outer = *x;
                const auto integrand = [&](double u) {
                    const OracleValue scaled{outer.value * u, outer.error_bound * u};
                    return eval(e.arg(0), &scaled);
                };
                return integrate(integrand, opts_);
            }
        }
        throw ExprError("oracle: unsupported node kind");
    }

private:
    OracleOptions opts_;
};

}  // namespace

OracleValue oracle_value(const Expr& e, const ExprPtr& binding, const OracleOptions& opts) {
    const Evaluator ev(opts);
    if (!binding) return ev.eval(e, nullptr);
    const auto x = ev.eval(*binding, nullptr);
    return ev.eval(e, &x);
}

OracleValue oracle_at(const Expr& e, double x, const OracleOptions& opts) {
    const Evaluator ev(opts);
    const OracleValue in{x, 0.0};
    return ev.eval(e, &in);
}

OracleValue polylog_series(std::uint64_t r, double lam) {
    if (lam <= 0.0) return {0.0, 0.0};
    const double rr = static_cast<double>(r);
    double sum = 0.0;
    double power = lam;
    std::uint64_t n = 1;
    // Tail after n: sum_{k>n} lam^k / k^r <= lam^(n+1) / ((n+1)^r (1 - lam)).
    for (; n < 100000000; ++n) {
        sum += power / std::pow(static_cast<double>(n), rr);
        power *= lam;
        const double tail = power / (std::pow(static_cast<double>(n + 1), rr) * (1.0 - lam));
        if (tail < kSeriesTolerance * std::max(sum, 1e-300)) return {sum, tail + 1e-16 * sum};
    }
    return {sum, power / (1.0 - lam)};
}

OracleValue binomial_series(std::uint64_t t, double z) {
    if (z <= 0.0) return {1.0, 0.0};
    const double td = static_cast<double>(t);
    // C(t(n+1), n+1) / C(tn, n) increases toward t^t / (t-1)^(t-1).
    const double rho = std::exp(td * std::log(td) - (td - 1.0) * std::log(td - 1.0) + td * std::log(z));
    double sum = 1.0;
    for (std::uint64_t n = 1; n < 100000000; ++n) {
        const double nd = static_cast<double>(n);
        const double log_term = std::lgamma(td * nd + 1.0) - std::lgamma(nd + 1.0) -
                                std::lgamma((td - 1.0) * nd + 1.0) + td * nd * std::log(z);
        const double term = std::exp(log_term);
        sum += term;
        if (rho < 1.0) {
            const double tail = term * rho / (1.0 - rho);
            if (tail < kSeriesTolerance * sum) return {sum, tail + 1e-14 * sum};
        }
    }
    return {sum, std::numeric_limits<double>::infinity()};
}

OracleValue rama_series() {
    // T = X1 + X2 + B with X_i ~ Geo(1/4) and B ~ Bernoulli(5/9).
    const auto sum_law = [](int m) {
        return m < 0 ? 0.0 : (m + 1) * (9.0 / 16.0) * std::pow(0.25, m);
    };
    double total = 0.0;
    double ratio = 1.0;  // C(2t, t) / 4^t
    const int last = 80;
    for (int t = 0; t <= last; ++t) {
        if (t > 0) ratio *= (2.0 * t - 1.0) / (2.0 * t);
        const double p = (4.0 / 9.0) * sum_law(t) + (5.0 / 9.0) * sum_law(t - 1);
        total += p * ratio * ratio * ratio;
    }
    // P(T > last) is far below 4^-70.
    return {total, 1e-16};
}

}  // namespace buffon
