#pragma once

#include <stdexcept>
#include <string>

namespace inellipse {

/// Base for all geometric precondition failures.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvexInput : GeometryError {
    using GeometryError::GeometryError;
};

struct CollinearPoints : NonConvexInput {
    using NonConvexInput::NonConvexInput;
};

struct ParallelogramInput : GeometryError {
    using GeometryError::GeometryError;
};

struct NotAnEllipse : GeometryError {
    using GeometryError::GeometryError;
};

struct SingularMap : GeometryError {
    using GeometryError::GeometryError;
};

struct DegenerateLine : GeometryError {
    using GeometryError::GeometryError;
};

struct ParameterOutOfRange : GeometryError {
    using GeometryError::GeometryError;
};

struct InvalidNormalizedQuad : GeometryError {
    using GeometryError::GeometryError;
};

/// Malformed documents, bad configs, unparsable numbers.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failures while emitting output.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace inellipse
