#pragma once

#include <stdexcept>
#include <string>

namespace gdi {

// Base class for every error raised by the toolkit. Each subclass maps to a
// distinct failure mode so callers (and the CLI) can report it precisely.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: overlapping coordinate sets, invalid intervals, empty sets.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// A coordinate or symbol index outside its valid range.
class IndexError : public Error {
public:
    using Error::Error;
};

// Enumeration would exceed the configured cell cap.
class SizeError : public Error {
public:
    using Error::Error;
};

// A policy returned a malformed distribution.
class ContractViolation : public Error {
public:
    using Error::Error;
};

// A conditional mutual information came out more negative than roundoff allows.
class NumericalIntegrityError : public Error {
public:
    using Error::Error;
};

class UnsupportedVariantError : public Error {
public:
    using Error::Error;
};

class UnsupportedConfigurationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gdi
