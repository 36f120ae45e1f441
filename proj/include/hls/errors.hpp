#pragma once

#include <stdexcept>
#include <string>

namespace hls {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed request: wrong sizes, mismatched dimensions, bad flags.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quadrature produced or received non-finite values.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A spectral expansion whose tail has not decayed to the required level.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stereographic inverse requested at the south pole.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Root bracketing failed.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constraint projection annihilated the test direction.
class DegenerateDirectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An invariant that cannot fail for valid inputs did fail.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hls
