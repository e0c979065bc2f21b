#include "buffon/registry.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "buffon/bags.hpp"
#include "buffon/walks.hpp"

namespace buffon {

namespace {

std::vector<NamedMachine> build() {
    using namespace ex;
    namespace k = boost::math::double_constants;
    const double ln2 = k::ln_two;
    const double zeta3 = 1.2020569031595942854;

    const auto li1 = polylog(1, flip());

    ExprPtr nested = even(x());
    for (int i = 0; i < 2; ++i) nested = ex::int1(nested);
    const auto zeta2 = compose(nested, constant(1, 1));
    for (int i = 0; i < 2; ++i) nested = ex::int1(nested);
    const auto zeta4 = compose(nested, constant(1, 1));

    // Nested expn / sqrt0 / int1, value known only through the oracle.
    const auto inner = ex::int1(mean(square(x()), sqrt1m(complement(even(x())))));
    const auto stress = compose(vn_value(PermClass::Sorted, 0, sqrt1m(complement(inner))), constant(3, 4));

    return {
        {"mgl", "pi/4, single-bag alternating series", mgl_quarter_pi(), k::pi / 4, true},
        {"machin", "pi/4 from arctan(1/2) and arctan(1/3)", machin_quarter_pi(), k::pi / 4, false},
        {"pi8", "pi/8, arctan(1/2) and arctan(1/3) averaged", pi_eighth(), k::pi / 8, false},
        {"rama", "1/pi, three balanced walks", rama(), 1 / k::pi, false},
        {"li1half", "Li_1(1/2) = log 2", li1, ln2, false},
        {"li2half", "Li_2(1/2)", polylog(2, flip()), k::pi_sqr / 12 - ln2 * ln2 / 2, false},
        {"li3half", "Li_3(1/2)", polylog(3, flip()),
         ln2 * ln2 * ln2 / 6 - k::pi_sqr * ln2 / 12 + 7 * zeta3 / 8, false},
        {"pi2over24", "pi^2/24 = (Li_2(1/2) + log^2(2)/2) / 2",
         mean(polylog(2, flip()), mean(conj(li1, li1), constant(0, 1))), k::pi_sqr / 24, false},
        {"zeta2", "pi^2/12, two nested integrators", zeta2, k::pi_sqr / 12, false},
        {"zeta4", "7 pi^4/720, four nested integrators", zeta4, 7 * k::pi_sqr * k::pi_sqr / 720, false},
        {"asin_half_at_half", "pi/12 = arcsin(1/2)/2", compose(asin_half_machine(), flip()), k::pi / 12,
         false},
        {"asin_half_at_one", "pi/4 = arcsin(1)/2", asin_half_at_one(), k::pi / 4,
         true},
        {"atan_at_one", "pi/4 = arctan 1", compose(atan_machine(), constant(1, 1)), k::pi / 4, true},
        {"erf1", "integral_0^1 exp(-w^2/2) dw", compose(erf_integral_machine(), constant(1, 1)),
         k::root_half_pi * std::erf(1 / k::root_two), false},
        {"exp_neg_half", "e^(-1/2)", vn_value(PermClass::Sorted, 0, flip()), std::exp(-0.5), false},
        {"poisson_zero", "P(Poisson(1/4) = 0) = e^(-1/4)", vn_value(PermClass::Sorted, 0, constant(1, 4)),
         std::exp(-0.25), false},
        {"third", "1/3 by pairs of flips", third(), 1.0 / 3.0, false},
        {"stress", "nested expn, sqrt0 and int1 at 3/4", stress, std::nullopt, false},
    };
}

}  // namespace

const std::vector<NamedMachine>& named_machines() {
    static const std::vector<NamedMachine> machines = build();
    return machines;
}

const NamedMachine* find_named(std::string_view name) {
    for (const auto& m : named_machines()) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

ExprPtr named(std::string_view name) {
    if (const auto* m = find_named(name)) return m->expr;
    std::string list;
    for (const auto& m : named_machines()) list += (list.empty() ? "" : ", ") + m.name;
    throw UnknownNameError("unknown machine '" + std::string(name) + "'; available: " + list);
}

}  // namespace buffon
