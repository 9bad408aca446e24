#pragma once

#include <stdexcept>
#include <string>

namespace rba {

// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// derive() applied to a word with a nonzero exponent.
struct NonScalarWord : Error {
    using Error::Error;
};

// Operation requires weight zero.
struct NonzeroWeight : Error {
    using Error::Error;
};

// geometric_inverse() of an element with a degree-0 term.
struct NonPositiveDegree : Error {
    using Error::Error;
};

// Binary operation on values attached to different algebra contexts.
struct ContextMismatch : Error {
    using Error::Error;
};

struct EmptyList : Error {
    using Error::Error;
};

// Sequence argument must vanish at 0.
struct NonzeroConstantTerm : Error {
    using Error::Error;
};

struct BadArguments : Error {
    using Error::Error;
};

// An enumeration would exceed its configured search-space bound.
struct SizeLimit : Error {
    using Error::Error;
};

// Binary operation on truncated series of different lengths.
struct TruncMismatch : Error {
    using Error::Error;
};

} // namespace rba
