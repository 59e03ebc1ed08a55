#pragma once

#include <stdexcept>
#include <string>

namespace wlab {

enum class ErrorKind {
    FewerThanThreeHullVertices,
    InvalidPolygon,
    InvalidPolytope,
    DegenerateInput,
    NotConvex,
    NotPositive,
    DimensionUnsupported,
    QuadratureFailure,
    CurvatureUnavailable,
    InsufficientSamples,
    CutMissesBody,
    CutThroughOrigin,
    SolverFailure,
    NegativeBeta,
    BadConfig,
    IoError,
    UnknownTarget,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// CLI exit codes: 1 = verdict failure, 2 = input error, 3 = numeric failure.
int exit_code(ErrorKind kind);

}  // namespace wlab
