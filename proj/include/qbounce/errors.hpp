#pragma once

#include <stdexcept>
#include <string>

namespace qbounce {

// All coefficients of a polynomial are zero.
class DegeneratePolynomialError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the documented domain (time outside [0, T], negative
// heights for the one-sided bouncer, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Both endpoints sit on the floor, so the bounce bound is infinite.
class UnboundedBouncesError : public DomainError {
public:
    using DomainError::DomainError;
};

// Symmetric-bouncer endpoint exactly at x = 0.
class BoundaryEndpointError : public DomainError {
public:
    using DomainError::DomainError;
};

// Endpoint signs are incompatible with the requested crossing parity.
class ParityMismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The final point lies on a focus of the path; the van Vleck determinant
// is infinite there.
class FocusAtEndpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Semiclassical amplitude overflow at a caustic node.
class CausticNodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qbounce
