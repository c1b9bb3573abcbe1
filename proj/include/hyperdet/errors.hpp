#pragma once

#include <stdexcept>
#include <string>

namespace hyperdet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (non-square determinant, mismatched factors).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument value failed (non-prime modulus, zero witness, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A serialized document could not be read. The message names the location.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The operation is only defined for a subset of formats.
class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

}  // namespace hyperdet
