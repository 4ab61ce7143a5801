#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcflow {

/// Precondition or argument-domain failure at an API boundary.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A principal radius (or the x -> xi map) stopped being positive.
class ConvexityLost : public std::runtime_error {
public:
    ConvexityLost(const std::string& what, std::size_t worst_node, double worst_value)
        : std::runtime_error(what + " (node " + std::to_string(worst_node) + ", value "
                             + std::to_string(worst_value) + ")"),
          worst_node_(worst_node), worst_value_(worst_value) {}

    std::size_t worst_node() const noexcept { return worst_node_; }
    double worst_value() const noexcept { return worst_value_; }

private:
    std::size_t worst_node_;
    double worst_value_;
};

/// The step controller ran out of halvings.
class StepCollapse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const char* msg) {
    if (!ok) throw ContractViolation(msg);
}

}  // namespace gcflow
