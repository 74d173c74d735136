#pragma once

#include <stdexcept>
#include <string>

namespace temposum {

/// Failure categories surfaced by the library. Data-shaped failures map to
/// CLI exit code 3; flag misuse is handled by the CLI layer itself.
enum class ErrorCode {
    // series / config
    EmptySeries,
    DegenerateSeries,
    OutOfRange,
    BadConfig,
    // ingest
    IoError,
    MissingColumn,
    UnparseableValue,
    EmptyCohort,
    CohortTooSmall,
    // discretize / windows
    NoCompleteWindow,
    IncompleteWindow,
    // mining
    LengthMismatch,
    TooFewTuples,
    TooShort,
    // evaluation
    EmptyQuery,
    EmptyQualifierSubset,
    MissingGoal,
    MissingGuideline,
    TooFewOccurrences,
    SingleAttribute,
    OrphanWindow,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::DegenerateSeries: return "DegenerateSeries";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::MissingColumn: return "MissingColumn";
        case ErrorCode::UnparseableValue: return "UnparseableValue";
        case ErrorCode::EmptyCohort: return "EmptyCohort";
        case ErrorCode::CohortTooSmall: return "CohortTooSmall";
        case ErrorCode::NoCompleteWindow: return "NoCompleteWindow";
        case ErrorCode::IncompleteWindow: return "IncompleteWindow";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooFewTuples: return "TooFewTuples";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::EmptyQuery: return "EmptyQuery";
        case ErrorCode::EmptyQualifierSubset: return "EmptyQualifierSubset";
        case ErrorCode::MissingGoal: return "MissingGoal";
        case ErrorCode::MissingGuideline: return "MissingGuideline";
        case ErrorCode::TooFewOccurrences: return "TooFewOccurrences";
        case ErrorCode::SingleAttribute: return "SingleAttribute";
        case ErrorCode::OrphanWindow: return "OrphanWindow";
    }
    return "Unknown";
}

/// Library-wide exception. Carries a machine-checkable code next to the
/// human-readable message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace temposum
