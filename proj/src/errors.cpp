#include "unital/errors.hpp"

#include <cstdio>

namespace unital {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NotRotation: return "NotRotation";
        case ErrorCode::NotPSD: return "NotPSD";
        case ErrorCode::NotUnital: return "NotUnital";
        case ErrorCode::NotTracePreserving: return "NotTracePreserving";
        case ErrorCode::NotHermitianPreserving: return "NotHermitianPreserving";
        case ErrorCode::NotChannel: return "NotChannel";
        case ErrorCode::CanonicalizationFailed: return "CanonicalizationFailed";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::SumMismatch: return "SumMismatch";
        case ErrorCode::NotMajorized: return "NotMajorized";
        case ErrorCode::NotInTetrahedron: return "NotInTetrahedron";
        case ErrorCode::OrderingViolated: return "OrderingViolated";
        case ErrorCode::NotInCone: return "NotInCone";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::BadCoefficients: return "BadCoefficients";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

NotPsdError::NotPsdError(double min_eigenvalue, const std::string& message)
    : Error(ErrorCode::NotPSD, message), min_eigenvalue_(min_eigenvalue) {}

namespace {
std::string majorization_message(std::size_t prefix, double target_sum, double bound_sum) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "prefix %zu: target sum %.17g exceeds bound sum %.17g", prefix,
                  target_sum, bound_sum);
    return buf;
}
}  // namespace

NotMajorizedError::NotMajorizedError(std::size_t prefix, double target_sum, double bound_sum)
    : Error(ErrorCode::NotMajorized, majorization_message(prefix, target_sum, bound_sum)),
      prefix_(prefix),
      target_sum_(target_sum),
      bound_sum_(bound_sum) {}

}  // namespace unital
