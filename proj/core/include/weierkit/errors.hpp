#pragma once

#include <stdexcept>
#include <string>

namespace weierkit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation point sits on a pole of the kernel (lattice point, z = w, ...).
class PoleError : public Error {
public:
    using Error::Error;
};

/// A geometric ratio has modulus one within tolerance, so no resummation branch applies.
class UnitCircleError : public Error {
public:
    using Error::Error;
};

/// Inputs violate a precondition (kind mismatch, coincident points, bad parameters).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A Neumann-type inverse was requested outside its convergence region.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Recursive reduction hit a configuration where the reduced value cancels to zero.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Exponent arithmetic left the representable range.
class OverflowError : public Error {
public:
    using Error::Error;
};

} // namespace weierkit
