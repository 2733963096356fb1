#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skincare {

enum class ErrorCode {
  MalformedCsv,
  EmptyCatalog,
  DuplicateId,
  UnknownCategory,
  InvalidValue,
  EmptyVocabulary,
  UnknownToken,
  LengthMismatch,
  RowOutOfRange,
  IndexOutOfRange,
  NonFiniteGradient,
  NonFiniteLoss,
  TooFewPoints,
  InvalidPerplexity,
  InvalidArgument,
  InvalidDistribution,
  UnknownAnchor,
  UnknownBrand,
  UnknownProduct,
  StaleModel,
  UnknownSession,
  EmptyInput,
  Io,
  Format,
};

/// Stable snake_case name, used as the machine-readable code in API errors.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an iterative solver produces a non-finite objective.
class NonFiniteLossError : public Error {
 public:
  NonFiniteLossError(std::size_t step, const std::string& message)
      : Error(ErrorCode::NonFiniteLoss, message), step_(step) {}

  /// Zero-based index of the step whose loss was non-finite.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace skincare
