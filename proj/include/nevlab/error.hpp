#pragma once

#include <stdexcept>
#include <string>

namespace nevlab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented invariant (curve shape, degree limits, lemma preconditions).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Curve specification text could not be read. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line) : Error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A quadrature or root-search ran out of its node budget before reaching tolerance.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Level-curve continuation or asymptotic fit failed.
class LocusError : public Error {
public:
    using Error::Error;
};

} // namespace nevlab
