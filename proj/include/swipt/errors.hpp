#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

/// Argument outside the mathematical domain of an operation, or a parameter
/// set violating one of its declared bounds.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double abs_error)
        : std::runtime_error(what), estimate_(estimate), abs_error_(abs_error) {}

    double estimate() const noexcept { return estimate_; }
    double abs_error() const noexcept { return abs_error_; }

private:
    double estimate_;
    double abs_error_;
};

}  // namespace swipt
