#pragma once

#include <stdexcept>
#include <string>

namespace cahs {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside an open interval domain (profiles, fields).
struct DomainError : Error {
    using Error::Error;
};

/// A constant that must be nonzero (or positive) is not.
struct InvalidConstantError : Error {
    using Error::Error;
};

/// Requested value outside the attainable range of an inversion.
struct RangeError : Error {
    RangeError(const std::string& msg, double lo, double hi)
        : Error(msg), attainable_lo(lo), attainable_hi(hi) {}
    double attainable_lo;
    double attainable_hi;
};

/// Query at a point where the distance function is singular (cut locus, center).
struct SingularPointError : Error {
    using Error::Error;
};

/// Query outside the validity region of a distance field.
struct OutOfRegionError : Error {
    using Error::Error;
};

/// Finite-difference step underflow or domain exit while differencing.
struct StepError : Error {
    using Error::Error;
};

/// Parallel-offset evolution hit a focal point.
struct FocalPointError : Error {
    FocalPointError(const std::string& msg, int idx) : Error(msg), index(idx) {}
    int index;
};

/// Scenario configuration problem; `path` is the offending field.
struct ConfigError : Error {
    ConfigError(const std::string& msg, std::string field_path)
        : Error(msg + " (at " + field_path + ")"), path(std::move(field_path)) {}
    std::string path;
};

/// Feature combination the library does not support.
struct UnsupportedError : Error {
    using Error::Error;
};

}  // namespace cahs
