#include "detsum/error.hpp"

namespace detsum {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MaskOutOfRange: return "MaskOutOfRange";
    case ErrorCode::UnsupportedAlgorithm: return "UnsupportedAlgorithm";
    case ErrorCode::UnsupportedRing: return "UnsupportedRing";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::TooManyMatrices: return "TooManyMatrices";
    case ErrorCode::TooManyElements: return "TooManyElements";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::MixedComponentFields: return "MixedComponentFields";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::ContractViolation: return "ContractViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace detsum
