#include "cellgroup/errors.hpp"

namespace cellgroup {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyRoute: return "EmptyRoute";
    case ErrorCode::kDuplicateRoute: return "DuplicateRoute";
    case ErrorCode::kTooFewParts: return "TooFewParts";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kSamePartPair: return "SamePartPair";
    case ErrorCode::kFamilyTooSmall: return "FamilyTooSmall";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kInfeasibleConfig: return "InfeasibleConfig";
    case ErrorCode::kInconsistentSolutions: return "InconsistentSolutions";
    case ErrorCode::kMalformedFlow: return "MalformedFlow";
    case ErrorCode::kTimeout: return "Timeout";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

SyntaxError::SyntaxError(int line, const std::string& message)
    : Error(ErrorCode::kSyntaxError, "instance: line " + std::to_string(line) + ": " + message), line_(line) {}

TimeoutError::TimeoutError(const std::string& message, std::optional<std::int64_t> incumbent, std::int64_t bound)
    : Error(ErrorCode::kTimeout, message), incumbent_(incumbent), bound_(bound) {}

}  // namespace cellgroup
