#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace unital {

enum class ErrorCode {
    NonFinite,
    NotHermitian,
    NoConvergence,
    NotUnitary,
    NotRotation,
    NotPSD,
    NotUnital,
    NotTracePreserving,
    NotHermitianPreserving,
    NotChannel,
    CanonicalizationFailed,
    PreconditionViolated,
    SumMismatch,
    NotMajorized,
    NotInTetrahedron,
    OrderingViolated,
    NotInCone,
    ParseError,
    BadCoefficients,
};

std::string_view to_string(ErrorCode code);

/// Base error for every failure raised by the library. The code identifies
/// the failure kind; the message carries the offending values.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a Choi matrix has an eigenvalue below -tol.
class NotPsdError : public Error {
public:
    NotPsdError(double min_eigenvalue, const std::string& message);

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

/// Raised when a weight vector is not majorized by the admissible bound.
/// `prefix` is 1-based: the first k with sum_{i<=k} target_i > sum_{i<=k} bound_i.
class NotMajorizedError : public Error {
public:
    NotMajorizedError(std::size_t prefix, double target_sum, double bound_sum);

    std::size_t prefix() const noexcept { return prefix_; }
    double target_sum() const noexcept { return target_sum_; }
    double bound_sum() const noexcept { return bound_sum_; }

private:
    std::size_t prefix_;
    double target_sum_;
    double bound_sum_;
};

}  // namespace unital
