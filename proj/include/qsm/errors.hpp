#pragma once

#include <stdexcept>
#include <string>

namespace qsm {

/// Base class for every error the library throws. Each concrete type names
/// the violated precondition so drivers can report it verbatim.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotHermitian : Error {
    using Error::Error;
};
struct NotUnitary : Error {
    using Error::Error;
};
struct SingularInput : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct RegionNotContained : Error {
    using Error::Error;
};
struct OverlappingRegions : Error {
    using Error::Error;
};
struct InvalidSize : Error {
    using Error::Error;
};
struct OutsideConvergenceRadius : Error {
    using Error::Error;
};
struct ToleranceUnreachable : Error {
    using Error::Error;
};
struct OutsideStrip : Error {
    using Error::Error;
};
struct NonFaithfulState : Error {
    using Error::Error;
};
struct NonFaithfulReference : Error {
    using Error::Error;
};
struct NonSeparatingVector : Error {
    using Error::Error;
};
struct OrderTooHigh : Error {
    using Error::Error;
};
struct BadReservoirIndex : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace qsm
