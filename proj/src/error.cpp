#include "cmvf/error.hpp"

namespace cmvf {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::MixedField: return "MixedField";
    case ErrorCode::PivotZero: return "PivotZero";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::SquareNotZero: return "SquareNotZero";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::NotLocallyClosed: return "NotLocallyClosed";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::OutOfGrid: return "OutOfGrid";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotPartition: return "NotPartition";
    case ErrorCode::NotAnInterval: return "NotAnInterval";
    case ErrorCode::NoEssentialSolution: return "NoEssentialSolution";
    case ErrorCode::NotIsolatedInvariant: return "NotIsolatedInvariant";
    case ErrorCode::ReductionStalled: return "ReductionStalled";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EvalDomain: return "EvalDomain";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::InvalidFormat: return "InvalidFormat";
    case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

} // namespace cmvf
