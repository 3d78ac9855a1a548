#include "corruptlab/error.hpp"

namespace corruptlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotReconstructible: return "NotReconstructible";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CapacityGuardExceeded: return "CapacityGuardExceeded";
    case ErrorCode::MissingStatistic: return "MissingStatistic";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::DivergedObjective: return "DivergedObjective";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SizeGuardExceeded:
    case ErrorCode::CapacityGuardExceeded:
    case ErrorCode::InternalInconsistency:
    case ErrorCode::DivergedObjective:
      return true;
    default:
      return false;
  }
}

}  // namespace corruptlab
