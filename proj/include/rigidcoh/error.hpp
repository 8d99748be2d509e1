#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidcoh {

enum class ErrorCode {
    NotContained,
    InfiniteQuotient,
    DimensionMismatch,
    InvalidGroup,
    InvalidAction,
    NotEquivariant,
    NotInjective,
    NormNonzero,
    RepresentativeInvalid,
    ExponentMismatch,
    FormulaMismatch,
    DivisibilityViolated,
    NotSurjective,
    InvalidRootDatum,
    TooLarge,
    CharacterNotPlus,
    NotGaloisStable,
    ZeroWithinPrecision,
    PrecisionInsufficient,
    InvalidArgument,
    ParseError,
    SchemaError,
    DanglingReference,
};

constexpr std::string_view code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NormNonzero: return "NormNonzero";
    case ErrorCode::RepresentativeInvalid: return "RepresentativeInvalid";
    case ErrorCode::ExponentMismatch: return "ExponentMismatch";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::InvalidRootDatum: return "InvalidRootDatum";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::CharacterNotPlus: return "CharacterNotPlus";
    case ErrorCode::NotGaloisStable: return "NotGaloisStable";
    case ErrorCode::ZeroWithinPrecision: return "ZeroWithinPrecision";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

} // namespace rigidcoh
