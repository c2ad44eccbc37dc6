#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace newton_forge {

enum class ErrorCode {
    DetZero,
    NotInCone,
    NotInDomain,
    NotPrime,
    NotCoprime,
    HodgeMismatch,
    EnumerationMismatch,
    MissingEndpoint,
    RangeMismatch,
    TraceNotInPrimeField,
    BudgetExceeded,
    NotPolynomial,
    NotIntegral,
    InvalidInput,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DetZero: return "DetZero";
    case ErrorCode::NotInCone: return "NotInCone";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::HodgeMismatch: return "HodgeMismatch";
    case ErrorCode::EnumerationMismatch: return "EnumerationMismatch";
    case ErrorCode::MissingEndpoint: return "MissingEndpoint";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::TraceNotInPrimeField: return "TraceNotInPrimeField";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotPolynomial: return "NotPolynomial";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace newton_forge
