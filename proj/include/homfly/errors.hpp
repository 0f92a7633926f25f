#pragma once

#include <stdexcept>
#include <string>

namespace homfly {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input could not be parsed (malformed syntax in PD or JSON input).
struct ParseError : Error {
    using Error::Error;
};

/// An arc label does not appear exactly twice in a PD code.
struct NonQuadrivalentError : ParseError {
    using ParseError::ParseError;
};

/// No globally consistent strand orientation exists for the input.
struct OrientationConflictError : ParseError {
    using ParseError::ParseError;
};

/// A structurally invalid diagram or invalid argument to a diagram operation.
struct ValidationError : Error {
    using Error::Error;
};

struct UnknownCrossingError : ValidationError {
    using ValidationError::ValidationError;
};

struct BadGeneratorIndexError : ValidationError {
    using ValidationError::ValidationError;
};

/// The dynamic program refused to run because a table would exceed the
/// configured budget.  Carries the width actually achieved by the heuristic.
struct WidthBudgetExceededError : Error {
    WidthBudgetExceededError(const std::string& msg, int achieved_width)
        : Error(msg), width(achieved_width) {}
    int width;
};

/// Internal invariant violation: these signal a pipeline bug, never a bad
/// input, and must never fire on valid runs.
struct InternalError : Error {
    using Error::Error;
};

/// A delta exponent was negative where only nonnegative powers are legal.
struct NegativeDeltaExponentError : InternalError {
    using InternalError::InternalError;
};

}  // namespace homfly
