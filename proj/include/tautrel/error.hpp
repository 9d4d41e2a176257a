#pragma once

#include <stdexcept>

namespace tautrel {

// Bad arguments: unstable (g,n), ambient mismatch, out-of-range indices.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Degree conditions that an integral or pairing needs are not met.
class DimensionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A relation spec violates one of its invariants; the message names which.
class SpecError : public ParameterError {
public:
    using ParameterError::ParameterError;
};

// A configured resource cap was hit. Never converted into a partial result.
class LimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Internal bookkeeping produced something impossible (e.g. a non-homogeneous relation).
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tautrel
