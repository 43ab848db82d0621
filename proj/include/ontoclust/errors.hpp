#pragma once

#include <stdexcept>
#include <string>

namespace ontoclust {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input document could not be parsed (syntax, wrong type, missing field).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Document parsed but violates a model invariant (dangling id, cycle,
/// duplicate id, bad field value).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operation called outside its domain (empty string, d_max <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Append of a record whose id already exists.
class ConflictError : public Error {
public:
    using Error::Error;
};

/// Filesystem or stream failure.
class IoError : public Error {
public:
    using Error::Error;
};

/// Unsupported language or invalid configuration value.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ontoclust
