#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cellgroup {

enum class ErrorCode {
  kEmptyRoute,
  kDuplicateRoute,
  kTooFewParts,
  kDimensionMismatch,
  kInvalidId,
  kSamePartPair,
  kFamilyTooSmall,
  kSyntaxError,
  kInstanceTooLarge,
  kInfeasibleConfig,
  kInconsistentSolutions,
  kMalformedFlow,
  kTimeout,
};

std::string_view to_string(ErrorCode code);

// Base for every error raised by the library. `what()` carries a message
// prefixed with the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Raised when a search exceeds its node budget. Carries whatever the search
// had proven so far; the incumbent is absent if no feasible point was found.
class TimeoutError : public Error {
 public:
  TimeoutError(const std::string& message, std::optional<std::int64_t> incumbent, std::int64_t bound);
  std::optional<std::int64_t> incumbent() const noexcept { return incumbent_; }
  std::int64_t bound() const noexcept { return bound_; }

 private:
  std::optional<std::int64_t> incumbent_;
  std::int64_t bound_;
};

}  // namespace cellgroup
