#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legn {

enum class ErrorCode {
    NonUnitDivisor,
    WeightMismatch,
    NotLocal,
    RootOfNonUnit,
    NotInvertibleOrder,
    BadOrder,
    NotPrimitive,
    TruncationTooSmall,
    NotSemiQuasiHomogeneous,
    TiltedTangentCone,
    NotInGroupJ,
    DegenerateJacobian,
    NotContact,
    NotLegendrianImage,
    NotInvertible,
    HypothesisViolated,
    BelowConductorRegion,
    BelowConductor,
    NotEquisingular,
    ReductionFailed,
    ParseError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace legn
