#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qharness {

enum class ErrorCode {
    ParseError,
    InvalidParameter,
    ZeroConstantTerm,
    NonSquareConstant,
    InsufficientLength,
    InsufficientOrder,
    ExcessViolation,
    NotDegreePreserving,
    ZeroPivot,
    DegenerateLeadingCoefficient,
    HypothesisViolation,
    DegenerateDenominator,
    ResonantTime,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NonSquareConstant: return "NonSquareConstant";
    case ErrorCode::InsufficientLength: return "InsufficientLength";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::ExcessViolation: return "ExcessViolation";
    case ErrorCode::NotDegreePreserving: return "NotDegreePreserving";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ResonantTime: return "ResonantTime";
    }
    return "Unknown";
}

/// Structured failure raised by every module. `index()` carries the entry or
/// coefficient position where the failure was detected, when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

} // namespace qharness
