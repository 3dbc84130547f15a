#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

// Thrown when a quadrature, truncation, or iteration fails to reach its
// declared tolerance. The CLI maps this to exit code 2 (invalid parameters
// map to std::invalid_argument and exit code 1).
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace focklab
