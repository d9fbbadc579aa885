#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace filtmult {

enum class ErrorCode {
  DimensionMismatch,
  EmptyGenerators,
  NotMPrimary,
  DimensionUnsupported,
  BudgetExceeded,
  IndexOutOfTable,
  NotNoetherian,
  ArityMismatch,
  ExhaustedRetries,
  DegreeMismatch,
  TopCoefficientDrift,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Engine error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace filtmult
