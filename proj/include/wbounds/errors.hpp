#pragma once

#include <stdexcept>
#include <string>

namespace wbounds {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter violates a documented precondition
/// (non-positive sigma, c or cut level, malformed ranges, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A minorant family was requested outside the case it is defined for.
class CaseViolation : public Error {
public:
    using Error::Error;
};

/// Numerical failure: the computation could not produce a trustworthy value.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NoSignChange : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MaxIterations : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class Overflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ValidationError(what);
    }
}

}  // namespace detail

}  // namespace wbounds
