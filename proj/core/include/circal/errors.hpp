#pragma once

#include <exception>
#include <string>
#include <string_view>
#include <utility>

namespace circal {

// Base for everything thrown by this library. Pipelines can prepend a stage
// tag ("load", "propensity", ...) while keeping the concrete type intact.
class Error : public std::exception {
public:
    explicit Error(std::string message) : message_(std::move(message)) {}

    const char* what() const noexcept override { return message_.c_str(); }

    void prepend_stage(std::string_view stage) {
        message_ = std::string(stage) + ": " + message_;
    }

private:
    std::string message_;
};

// Bad or contradictory configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Unusable input data: parse failures, single-arm files, zero usable rows
// (CLI exit code 3).
class DataError : public Error {
public:
    using Error::Error;
};

// All-treated or all-control input; both arms are required.
class DegenerateArms : public DataError {
public:
    using DataError::DataError;
};

// Numerical failures during estimation (CLI exit code 4).
class NumericalError : public Error {
public:
    using Error::Error;
};

// Invalid argument values: non-finite numbers, out-of-range parameters.
class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Resultant length below eps_rho: the mean direction is not identified.
class UndefinedDirection : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Fitted propensities escaping (delta, 1-delta) with diverging coefficients.
class Separation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Iteration budget exhausted before the score tolerance was met.
class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A symmetric linear system (Fisher information, a11) is numerically singular.
class SingularInformation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace circal
