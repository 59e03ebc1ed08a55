#include "wlab/error.hpp"

namespace wlab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::FewerThanThreeHullVertices: return "FewerThanThreeHullVertices";
        case ErrorKind::InvalidPolygon: return "InvalidPolygon";
        case ErrorKind::InvalidPolytope: return "InvalidPolytope";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::NotConvex: return "NotConvex";
        case ErrorKind::NotPositive: return "NotPositive";
        case ErrorKind::DimensionUnsupported: return "DimensionUnsupported";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::CurvatureUnavailable: return "CurvatureUnavailable";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::CutMissesBody: return "CutMissesBody";
        case ErrorKind::CutThroughOrigin: return "CutThroughOrigin";
        case ErrorKind::SolverFailure: return "SolverFailure";
        case ErrorKind::NegativeBeta: return "NegativeBeta";
        case ErrorKind::BadConfig: return "BadConfig";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::UnknownTarget: return "UnknownTarget";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::QuadratureFailure:
        case ErrorKind::CurvatureUnavailable:
        case ErrorKind::SolverFailure:
        case ErrorKind::InsufficientSamples:
            return 3;
        default:
            return 2;
    }
}

}  // namespace wlab
