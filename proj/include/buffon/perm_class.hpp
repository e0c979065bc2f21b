#pragma once

#include <optional>
#include <string_view>

namespace buffon {

/// Permutation classes driving the von Neumann schema.
enum class PermClass {
    All,              ///< every permutation: geometric law
    Sorted,           ///< U1 < U2 < ... < UN: Poisson law
    RecordFirstMax,   ///< U1 > U2, ..., UN (cyclic permutations): logarithmic law
    AlternatingEven,  ///< U1 < U2 > U3 < ... with N even: EGF sec
    AlternatingOdd,   ///< same with N odd: EGF tan
};

std::string_view to_string(PermClass c) noexcept;
std::optional<PermClass> perm_class_from_string(std::string_view name) noexcept;

}  // namespace buffon
