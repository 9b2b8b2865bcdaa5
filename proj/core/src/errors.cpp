#include "qcharmlab/errors.hpp"

namespace qcharmlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::SelfIntersecting: return "SelfIntersecting";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::OutsideDomain: return "OutsideDomain";
        case ErrorCode::AmbiguousFoot: return "AmbiguousFoot";
        case ErrorCode::SingularCollar: return "SingularCollar";
        case ErrorCode::InvalidRadius: return "InvalidRadius";
        case ErrorCode::BoundaryDivergence: return "BoundaryDivergence";
        case ErrorCode::OrientationFailure: return "OrientationFailure";
        case ErrorCode::NotHomeomorphism: return "NotHomeomorphism";
        case ErrorCode::EmptyCollar: return "EmptyCollar";
        case ErrorCode::CollarEscape: return "CollarEscape";
        case ErrorCode::NotSubharmonic: return "NotSubharmonic";
        case ErrorCode::SignError: return "SignError";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::LewyViolation: return "LewyViolation";
        case ErrorCode::MaxPrincipleFailure: return "MaxPrincipleFailure";
        case ErrorCode::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace qcharmlab
