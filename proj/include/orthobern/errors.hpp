#pragma once

#include <stdexcept>
#include <string>

namespace orthobern {

// x (or a parameter) outside the defining interval, or a malformed interval.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Basis index out of range (j > n, negative indices, ...).
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Request exceeds a supported limit (degree cap, exact-arithmetic guard,
// quadrature point-count range).  The library refuses rather than degrade.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A sampled function produced a non-finite value; carries the offending point.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, double x)
        : std::runtime_error(what + " at x=" + std::to_string(x)), x_(x), y_(0), has_y_(false) {}
    EvaluationError(const std::string& what, double x, double y)
        : std::runtime_error(what + " at (" + std::to_string(x) + ", " + std::to_string(y) + ")"),
          x_(x), y_(y), has_y_(true) {}
    double x() const { return x_; }
    double y() const { return y_; }
    bool is_2d() const { return has_y_; }

private:
    double x_, y_;
    bool has_y_;
};

// Inconsistent configuration (mismatched parameter lists, bad input data, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A triangular-solve diagonal came out zero.  Provably cannot happen for the
// integrals used here; raised instead of dividing if it ever does.
class SingularityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace orthobern
