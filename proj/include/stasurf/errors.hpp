#pragma once

#include <stdexcept>
#include <string>

namespace stasurf {

/// Iterative method failed to converge, or a numeric consistency check
/// (rounding residual, imaginary trace, ...) was violated.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation requested at a point where the quantity is undefined:
/// a pole on an integration contour, a degenerate metric point, etc.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed surface description or CLI input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stasurf
