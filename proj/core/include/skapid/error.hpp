#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skapid {

enum class ErrorKind {
  NegativeProbability,
  NotNormalized,
  DuplicateOutcome,
  ArityMismatch,
  UnknownVariable,
  ZeroProbabilityCondition,
  AlphabetMismatch,
  OutOfRange,
  OverlappingSets,
  SupportViolation,
  InconsistentDecomposition,
  ConvergenceFailure,
  UnknownName,
  ParameterOutOfRange,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace skapid
