#pragma once

#include <stdexcept>
#include <string>

namespace kup {

enum class ErrorKind {
    LegMismatch,
    InvalidPlan,
    ShapeMismatch,
    NotNormalizable,
    NotTwoSided,
    NotAGroup,
    NotAbelian,
    VerificationFailure,
    RepCheckFailure,
    PreconditionViolated,
    InvalidBraidWord,
    NotSorted,
    NoSuchComponent,
    IncompleteColoring,
    AlgebraMismatch,
    LinkPresent,
    NormalizationUnavailable,
    NotSymmetric,
    FieldMismatch,
    DivisionByZero,
    ParseError,
    InvalidDiagram,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::LegMismatch: return "LegMismatch";
    case ErrorKind::InvalidPlan: return "InvalidPlan";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotNormalizable: return "NotNormalizable";
    case ErrorKind::NotTwoSided: return "NotTwoSided";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::RepCheckFailure: return "RepCheckFailure";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InvalidBraidWord: return "InvalidBraidWord";
    case ErrorKind::NotSorted: return "NotSorted";
    case ErrorKind::NoSuchComponent: return "NoSuchComponent";
    case ErrorKind::IncompleteColoring: return "IncompleteColoring";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::LinkPresent: return "LinkPresent";
    case ErrorKind::NormalizationUnavailable: return "NormalizationUnavailable";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace kup
