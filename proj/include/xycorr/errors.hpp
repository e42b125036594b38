#pragma once

#include <stdexcept>
#include <string>

namespace xycorr {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State validation
struct NotHermitian : Error {
    using Error::Error;
};
struct TraceNotOne : Error {
    using Error::Error;
};
struct NotPositive : Error {
    using Error::Error;
};

// Measure evaluation
struct BlochVectorZero : Error {
    using Error::Error;
};

// Numerics
struct QuadratureNoConvergence : Error {
    using Error::Error;
};
struct GridTooSmall : Error {
    using Error::Error;
};
struct NonUniformGrid : Error {
    using Error::Error;
};
struct FlatCurve : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct NotFound : Error {
    using Error::Error;
};
struct SizeTooLarge : Error {
    using Error::Error;
};

}  // namespace xycorr
