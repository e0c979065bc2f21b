#include "buffon/von_neumann.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "buffon/sampler.hpp"

namespace buffon {

std::string_view to_string(PermClass c) noexcept {
    switch (c) {
        case PermClass::All: return "all";
        case PermClass::Sorted: return "sorted";
        case PermClass::RecordFirstMax: return "recordmax";
        case PermClass::AlternatingEven: return "alteven";
        case PermClass::AlternatingOdd: return "altodd";
    }
    return "?";
}

std::optional<PermClass> perm_class_from_string(std::string_view name) noexcept {
    for (auto c : {PermClass::All, PermClass::Sorted, PermClass::RecordFirstMax,
                   PermClass::AlternatingEven, PermClass::AlternatingOdd}) {
        if (to_string(c) == name) return c;
    }
    if (name == "poisson") return PermClass::Sorted;
    if (name == "logarithmic" || name == "cyclic") return PermClass::RecordFirstMax;
    if (name == "geometric") return PermClass::All;
    return std::nullopt;
}

bool UniformRegister::reveal(std::size_t i, BitSource& src) {
    while (bits_.size() <= i) bits_.push_back(src.flip());
    return bits_[i];
}

Comparison compare_fresh(UniformRegister& reg, BitSource& src) {
    std::vector<bool> fresh;
    for (std::size_t i = 0;; ++i) {
        const bool mine = reg.reveal(i, src);
        const bool theirs = src.flip();
        fresh.push_back(theirs);
        if (mine != theirs) {
            return {theirs ? Order::FreshGreater : Order::FreshLess, UniformRegister(std::move(fresh))};
        }
    }
}

bool test_order_type(PermClass c, std::uint64_t n, BitSource& src) {
    switch (c) {
        case PermClass::All:
            return true;
        case PermClass::Sorted: {
            UniformRegister last;
            for (std::uint64_t j = 1; j < n; ++j) {
                auto cmp = compare_fresh(last, src);
                if (cmp.order == Order::FreshLess) return false;
                last = std::move(cmp.fresh);
            }
            return true;
        }
        case PermClass::RecordFirstMax: {
            if (n == 0) return false;
            UniformRegister first;
            for (std::uint64_t j = 1; j < n; ++j) {
                if (compare_fresh(first, src).order == Order::FreshGreater) return false;
            }
            return true;
        }
        case PermClass::AlternatingEven:
        case PermClass::AlternatingOdd: {
            const bool want_odd = c == PermClass::AlternatingOdd;
            if ((n % 2 == 1) != want_odd) return false;
            UniformRegister last;
            for (std::uint64_t j = 1; j < n; ++j) {
                // U1 < U2 > U3 < U4 ...: the fresh element must rise at even positions.
                const Order want = (j % 2 == 1) ? Order::FreshGreater : Order::FreshLess;
                auto cmp = compare_fresh(last, src);
                if (cmp.order != want) return false;
                last = std::move(cmp.fresh);
            }
            return true;
        }
    }
    return false;
}

namespace machine {

VnOutcome vn_variate(PermClass c, const Coin& lam, BitSource& src) {
    VnOutcome out;
    for (;;) {
        ++out.trials;
        const std::uint64_t n = geometric(lam);
        const auto before = src.flip_count();
        const bool accepted = test_order_type(c, n, src);
        out.comparison_flips += src.flip_count() - before;
        if (accepted) {
            out.value = n;
            return out;
        }
    }
}

bool vn_value(PermClass c, std::uint64_t a, const Coin& lam, BitSource& src) {
    return vn_variate(c, lam, src).value == a;
}

bool vn_iter(PermClass c, std::uint64_t b, const Coin& lam, BitSource& src) {
    for (std::uint64_t k = 1; k <= b; ++k) {
        const std::uint64_t n = geometric(lam);
        if (test_order_type(c, n, src)) return k == b;
    }
    return false;
}

bool polylog(std::uint64_t r, const Coin& lam, BitSource& src) {
    const std::uint64_t n = 1 + geometric(lam);
    for (std::uint64_t i = 0; i < r; ++i) {
        if (!test_order_type(PermClass::RecordFirstMax, n, src)) return false;
    }
    return true;
}

}  // namespace machine

VnSample vn_variate(PermClass c, const Expr& lam, const ExprPtr& binding, BitSource& src) {
    const auto before = src.flip_count();
    const Coin coin = make_coin(lam, binding, src);
    const auto out = machine::vn_variate(c, coin, src);
    return {{out.value, src.flip_count() - before, false}, out.trials, out.comparison_flips};
}

namespace {

// Euler zigzag numbers A_0..A_n: alternating permutations of size n.
double zigzag(std::uint64_t n) {
    // Seidel's boustrophedon triangle; exact in double well past any n used here.
    std::vector<double> row{1.0};
    for (std::uint64_t k = 1; k <= n; ++k) {
        std::vector<double> next(k + 1, 0.0);
        for (std::uint64_t i = 1; i <= k; ++i) next[i] = next[i - 1] + row[k - i];
        row = std::move(next);
    }
    return row.back();
}

}  // namespace

double class_coefficient(PermClass c, std::uint64_t n) {
    switch (c) {
        case PermClass::All: return 1.0;
        case PermClass::Sorted: return 1.0 / std::tgamma(static_cast<double>(n) + 1.0);
        case PermClass::RecordFirstMax: return n == 0 ? 0.0 : 1.0 / static_cast<double>(n);
        case PermClass::AlternatingEven:
        case PermClass::AlternatingOdd: {
            const bool odd = n % 2 == 1;
            if (odd != (c == PermClass::AlternatingOdd)) return 0.0;
            return zigzag(n) / std::tgamma(static_cast<double>(n) + 1.0);
        }
    }
    return 0.0;
}

double class_egf(PermClass c, double lam) {
    switch (c) {
        case PermClass::All: return 1.0 / (1.0 - lam);
        case PermClass::Sorted: return std::exp(lam);
        case PermClass::RecordFirstMax: return -std::log1p(-lam);
        case PermClass::AlternatingEven: return 1.0 / std::cos(lam);
        case PermClass::AlternatingOdd: return std::tan(lam);
    }
    return 0.0;
}

double trial_success_rate(PermClass c, double lam) {
    if (c == PermClass::All) return 1.0;
    return (1.0 - lam) * class_egf(c, lam);
}

double vn_iterations_stat(PermClass c, double lam) { return 1.0 / trial_success_rate(c, lam); }

double vn_probability(PermClass c, double lam, std::uint64_t n) {
    const double coef = class_coefficient(c, n);
    if (coef == 0.0) return 0.0;
    if (c == PermClass::All) return (1.0 - lam) * std::pow(lam, static_cast<double>(n));
    return coef * std::pow(lam, static_cast<double>(n)) / class_egf(c, lam);
}

ExprPtr vn_value_bernoulli(PermClass c, std::uint64_t a, ExprPtr lam) {
    return ex::vn_value(c, a, std::move(lam));
}

ExprPtr vn_iter_bernoulli(PermClass c, std::uint64_t b, ExprPtr lam) {
    return ex::vn_iter(c, b, std::move(lam));
}

ExprPtr polylog_bernoulli(std::uint64_t r, ExprPtr lam) { return ex::polylog(r, std::move(lam)); }

namespace {

struct TranscendentalEntry {
    std::string_view name;
    PermClass perm;
    bool iterations;       // VnIter with b = 1, else VnValue
    std::uint64_t index;   // a for VnValue
    bool complement_input;
};

constexpr std::array<TranscendentalEntry, 12> kTranscendental{{
    {"exp_neg", PermClass::Sorted, false, 0, false},
    {"exp_x_minus_1", PermClass::Sorted, false, 0, true},
    {"one_minus_x_exp", PermClass::Sorted, true, 0, false},
    {"x_exp_one_minus_x", PermClass::Sorted, true, 0, true},
    {"x_over_log", PermClass::RecordFirstMax, false, 1, false},
    {"one_minus_x_over_log", PermClass::RecordFirstMax, false, 1, true},
    {"one_minus_x_log", PermClass::RecordFirstMax, true, 0, false},
    {"x_log_inv_x", PermClass::RecordFirstMax, true, 0, true},
    {"cos", PermClass::AlternatingEven, false, 0, false},
    {"one_minus_x_over_cos", PermClass::AlternatingEven, true, 0, false},
    {"x_over_tan", PermClass::AlternatingOdd, false, 1, false},
    {"one_minus_x_tan", PermClass::AlternatingOdd, true, 0, false},
}};

}  // namespace

ExprPtr transcendental_machine(std::string_view name) {
    for (const auto& entry : kTranscendental) {
        if (entry.name != name) continue;
        ExprPtr input = entry.complement_input ? ex::complement(ex::x()) : ex::x();
        return entry.iterations ? ex::vn_iter(entry.perm, 1, std::move(input))
                                : ex::vn_value(entry.perm, entry.index, std::move(input));
    }
    throw ExprError("unknown transcendental machine '" + std::string(name) + "'");
}

const std::vector<std::string_view>& transcendental_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> out;
        for (const auto& entry : kTranscendental) out.push_back(entry.name);
        return out;
    }();
    return names;
}

}  // namespace buffon
