#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rineq {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kNonConvergence,
  kNotHermitian,
  kNotPositiveDefinite,
  kSingularGamma,
  kAxisEigenvalue,
  kResonantFrequency,
  kPairingFailure,
  kRankAmbiguity,
  kChainExtractionFailure,
  kIndefiniteDegenerate,
  kSingularX1,
  kNotSolvable,
  kIndeterminate,
  kSearchExhausted,
  kMissingChainBasis,
  kMatchingAmbiguity,
  kInvalidArgument,
  kParseError,
};

/// Stable snake_case name used in JSON error objects, e.g. "singular_gamma".
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `context` carries the operation name
/// and, where useful, the offending value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

}  // namespace rineq
