#pragma once

#include <stdexcept>
#include <string>

namespace hypfrac {

/// Argument outside the mathematical domain of an operation (bad order,
/// non-positive time, point off the half-plane, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its stated accuracy (quadrature
/// budget exhausted, Laplace inversion breakdown, first passage not found).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& where, const std::string& what) {
    throw DomainError(where + ": " + what);
}

[[noreturn]] inline void numerical_fail(const std::string& where, const std::string& what) {
    throw NumericalError(where + ": " + what);
}

}  // namespace detail
}  // namespace hypfrac
