#include "trigonal/error.hpp"

namespace trigonal {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNumerical: return "NotNumerical";
    case ErrorCode::DegenerateBranching: return "DegenerateBranching";
    case ErrorCode::NotTotallyRamified: return "NotTotallyRamified";
    case ErrorCode::SemigroupMismatch: return "SemigroupMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::RootIsolationFailure: return "RootIsolationFailure";
    case ErrorCode::UnsupportedSupport: return "UnsupportedSupport";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::BasisExhausted: return "BasisExhausted";
    case ErrorCode::SingularConfiguration: return "SingularConfiguration";
    case ErrorCode::RootAccountingFailure: return "RootAccountingFailure";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::PathCrossesBranchPoint: return "PathCrossesBranchPoint";
    case ErrorCode::IllConditionedLattice: return "IllConditionedLattice";
    case ErrorCode::DivergentParameters: return "DivergentParameters";
    case ErrorCode::AmbiguousCandidate: return "AmbiguousCandidate";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::NotHalfPeriod: return "NotHalfPeriod";
    case ErrorCode::TheoremCheckFailed: return "TheoremCheckFailed";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNumerical:
    case ErrorCode::DegenerateBranching:
    case ErrorCode::NotTotallyRamified:
    case ErrorCode::SemigroupMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ZeroElement:
    case ErrorCode::UnsupportedSupport:
    case ErrorCode::BasisExhausted:
    case ErrorCode::SingularConfiguration:
    case ErrorCode::PathCrossesBranchPoint:
      return ErrorClass::Validation;
    case ErrorCode::PrecisionLoss:
    case ErrorCode::IllConditionedLattice:
    case ErrorCode::AmbiguousCandidate:
    case ErrorCode::RootIsolationFailure:
      return ErrorClass::Precision;
    default:
      return ErrorClass::Verification;
  }
}

}  // namespace trigonal
