#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace corruptlab {

enum class ErrorCode {
  ParseError,
  LengthMismatch,
  NegativeWeight,
  NotNormalized,
  NotStochastic,
  SpaceMismatch,
  SizeGuardExceeded,
  InternalInconsistency,
  NotReconstructible,
  InvalidParameter,
  IndexOutOfRange,
  CapacityGuardExceeded,
  MissingStatistic,
  UnknownOutcome,
  EmptySample,
  PreconditionFailed,
  DivergedObjective,
  UnknownFamily,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for failures of numerical guards or internal consistency checks, as
/// opposed to invalid input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace corruptlab
