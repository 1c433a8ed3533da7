#pragma once

#include <stdexcept>
#include <string>

namespace dirops {

// Iteration cap or tail budget exhausted. The CLI maps this to exit code 3,
// distinct from a violated bound (2) and from bad arguments (1).
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what_arg)
        : std::runtime_error(what_arg) {}
};

} // namespace dirops
