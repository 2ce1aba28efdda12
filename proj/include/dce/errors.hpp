#pragma once

#include <stdexcept>
#include <string>

namespace dce {

// Violated precondition or invalid input. The CLI maps it to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Root finding, quadrature or integration failed. The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

} // namespace dce
