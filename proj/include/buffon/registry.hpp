#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "buffon/expr.hpp"

namespace buffon {

struct NamedMachine {
    std::string name;
    std::string description;
    ExprPtr expr;                 ///< closed
    std::optional<double> exact;  ///< closed-form target, when one is known
    bool weak = false;            ///< infinite expected flip count
};

class UnknownNameError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::vector<NamedMachine>& named_machines();
const NamedMachine* find_named(std::string_view name);

/// The registered machine; throws UnknownNameError listing the names.
ExprPtr named(std::string_view name);

}  // namespace buffon
