#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mispec {

enum class ErrorKind {
    NotALattice,
    NotBounded,
    CycleDetected,
    TooLarge,
    UnknownLabel,
    ValidationError,
    QuotientInvalid,
    MaxNotPrime,
    InternalInvariantFailure,
    PreconditionStarFailed,
    PreconditionSemiprimeFailed,
    NotAdmissible,
    NotWellDefined,
    NotJoinPreserving,
    NotDistributive,
    NotPrime,
    UnknownTheorem,
    ParseError,
    SchemaError,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotBounded: return "NotBounded";
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::QuotientInvalid: return "QuotientInvalid";
    case ErrorKind::MaxNotPrime: return "MaxNotPrime";
    case ErrorKind::InternalInvariantFailure: return "InternalInvariantFailure";
    case ErrorKind::PreconditionStarFailed: return "PreconditionStarFailed";
    case ErrorKind::PreconditionSemiprimeFailed: return "PreconditionSemiprimeFailed";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    }
    return "?";
}

// Axiom violations found while validating a commutator table.
enum class ViolationKind { NotModular, NotCommutative, ExceedsMeet, NotJoinDistributive, NotSemidegenerate };

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::NotModular: return "NotModular";
    case ViolationKind::NotCommutative: return "NotCommutative";
    case ViolationKind::ExceedsMeet: return "ExceedsMeet";
    case ViolationKind::NotJoinDistributive: return "NotJoinDistributive";
    case ViolationKind::NotSemidegenerate: return "NotSemidegenerate";
    }
    return "?";
}

struct Violation {
    ViolationKind kind;
    std::vector<int> witness;       // element indices
    std::vector<std::string> labels; // same witness, by label
    std::size_t count = 1;          // number of violating tuples
    std::string message;
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::vector<int> witness = {})
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind),
          witness_(std::move(witness)) {}

    Error(std::vector<Violation> violations, const std::string& what)
        : std::runtime_error(std::string("ValidationError: ") + what), kind_(ErrorKind::ValidationError),
          violations_(std::move(violations)) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<int>& witness() const noexcept { return witness_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    ErrorKind kind_;
    std::vector<int> witness_;
    std::vector<Violation> violations_;
};

} // namespace mispec
