#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace detsum {

enum class ErrorCode {
  InvalidDescriptor,
  RingMismatch,
  ArityMismatch,
  ShapeMismatch,
  MaskOutOfRange,
  UnsupportedAlgorithm,
  UnsupportedRing,
  SizeLimit,
  TooManyMatrices,
  TooManyElements,
  HypothesisViolation,
  InvalidParameters,
  MixedComponentFields,
  NotHomogeneous,
  SearchSpaceTooLarge,
  ContractViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` identifies the contract
/// that was broken; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace detsum
