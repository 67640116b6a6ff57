#include "qforge/error.hpp"

namespace qforge {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::TraceNotOne: return "TraceNotOne";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::BadWeights: return "BadWeights";
        case ErrorCode::BadNorm: return "BadNorm";
        case ErrorCode::BadF: return "BadF";
        case ErrorCode::MismatchedDecoherers: return "MismatchedDecoherers";
        case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
        case ErrorCode::TimingCollision: return "TimingCollision";
        case ErrorCode::UnsupportedTarget: return "UnsupportedTarget";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace qforge
