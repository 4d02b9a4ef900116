#pragma once

#include <stdexcept>
#include <string>

namespace fieldscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input violates a documented precondition (shape, finiteness, tolerance band).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// The requested point is not in the numerical range.
class OutsideRangeError : public Error {
public:
    using Error::Error;
};

class NotRankOneError : public Error {
public:
    using Error::Error;
};

} // namespace fieldscope
