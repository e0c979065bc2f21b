#include "buffon/bags.hpp"

#include "buffon/combinators.hpp"

namespace buffon {

bool GeometricBag::fetch(std::size_t index, BitSource& src) {
    if (digits_.size() < index) digits_.resize(index, -1);
    auto& slot = digits_[index - 1];
    if (slot < 0) slot = src.flip() ? 1 : 0;
    return slot == 1;
}

bool GeometricBag::sample(BitSource& src) {
    const std::size_t index = 1 + machine::geometric_half(src);
    return fetch(index, src);
}

std::optional<bool> GeometricBag::digit(std::size_t index) const {
    if (index == 0 || index > digits_.size() || digits_[index - 1] < 0) return std::nullopt;
    return digits_[index - 1] == 1;
}

std::size_t GeometricBag::revealed() const noexcept {
    std::size_t n = 0;
    for (auto d : digits_) n += d >= 0 ? 1 : 0;
    return n;
}

void GeometricBag::set_digit(std::size_t index, bool value) {
    if (index == 0) throw std::out_of_range("bag digits are indexed from 1");
    if (digits_.size() < index) digits_.resize(index, -1);
    auto& slot = digits_[index - 1];
    if (slot >= 0 && (slot == 1) != value) throw std::logic_error("bag digit already revealed");
    slot = value ? 1 : 0;
}

bool bag_bernoulli(GeometricBag& bag, BitSource& src) { return bag.sample(src); }

ExprPtr int1(ExprPtr body) { return ex::int1(std::move(body)); }

ExprPtr log1p_machine() { return ex::conj(ex::x(), ex::int1(ex::even(ex::x()))); }

ExprPtr atan_machine() { return ex::conj(ex::x(), ex::int1(ex::even(ex::square(ex::x())))); }

ExprPtr erf_integral_machine() {
    // e^(-w^2/2) as e^-v with v = mean(w^2, 0).
    const auto half_square = ex::mean(ex::square(ex::x()), ex::constant(0, 1));
    return ex::conj(ex::x(), ex::int1(ex::vn_value(PermClass::Sorted, 0, half_square)));
}

ExprPtr asin_integral_machine() {
    const auto root = ex::sqrt1m(ex::square(ex::x()));
    return ex::conj(ex::x(), ex::int1(ex::conj(root, ex::even(ex::x()))));
}

ExprPtr asin_half_machine() {
    // Average the integral with 1 - sqrt(1-x^2).
    return ex::mean(asin_integral_machine(), ex::complement(ex::sqrt1m(ex::square(ex::x()))));
}

IntegratorMachines named_integrator_machines() {
    return {log1p_machine(), atan_machine(), erf_integral_machine(), asin_half_machine()};
}

ExprPtr mgl_quarter_pi() {
    // With x = 1 the guard and the x reads inside the integrator cost nothing,
    // leaving exactly the four bag reads per round.
    return ex::compose(ex::int1(ex::even(ex::square(ex::x()))), ex::constant(1, 1));
}

ExprPtr machin_quarter_pi() {
    const auto atan_over_x = ex::int1(ex::even(ex::square(ex::x())));
    return ex::mean(ex::compose(atan_over_x, ex::flip()),
                    ex::conj(ex::constant(2, 3), ex::compose(atan_over_x, ex::third())));
}

ExprPtr pi_eighth() {
    const auto atan = atan_machine();
    return ex::mean(ex::compose(atan, ex::flip()), ex::compose(atan, ex::third()));
}

ExprPtr asin_half_at_one() {
    return ex::mean(ex::compose(asin_integral_machine(), ex::constant(1, 1)), ex::constant(1, 1));
}

}  // namespace buffon
