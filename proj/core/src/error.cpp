#include "rineq/error.hpp"

namespace rineq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kNotHermitian: return "not_hermitian";
    case ErrorCode::kNotPositiveDefinite: return "not_positive_definite";
    case ErrorCode::kSingularGamma: return "singular_gamma";
    case ErrorCode::kAxisEigenvalue: return "axis_eigenvalue";
    case ErrorCode::kResonantFrequency: return "resonant_frequency";
    case ErrorCode::kPairingFailure: return "pairing_failure";
    case ErrorCode::kRankAmbiguity: return "rank_ambiguity";
    case ErrorCode::kChainExtractionFailure: return "chain_extraction_failure";
    case ErrorCode::kIndefiniteDegenerate: return "indefinite_degenerate";
    case ErrorCode::kSingularX1: return "singular_x1";
    case ErrorCode::kNotSolvable: return "not_solvable";
    case ErrorCode::kIndeterminate: return "indeterminate";
    case ErrorCode::kSearchExhausted: return "search_exhausted";
    case ErrorCode::kMissingChainBasis: return "missing_chain_basis";
    case ErrorCode::kMatchingAmbiguity: return "matching_ambiguity";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParseError: return "parse_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string context)
    : std::runtime_error(message), code_(code), context_(std::move(context)) {}

}  // namespace rineq
