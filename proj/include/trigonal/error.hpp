#pragma once

#include <stdexcept>
#include <string>

namespace trigonal {

enum class ErrorCode {
  NotNumerical,
  DegenerateBranching,
  NotTotallyRamified,
  SemigroupMismatch,
  InvalidArgument,
  ZeroElement,
  RootIsolationFailure,
  UnsupportedSupport,
  VerificationFailed,
  BasisExhausted,
  SingularConfiguration,
  RootAccountingFailure,
  RankDeficient,
  PrecisionLoss,
  PathCrossesBranchPoint,
  IllConditionedLattice,
  DivergentParameters,
  AmbiguousCandidate,
  NoCandidate,
  NotHalfPeriod,
  TheoremCheckFailed,
};

const char* to_string(ErrorCode code);

// Classification used by the command line front end for exit codes.
enum class ErrorClass { Validation, Verification, Precision };
ErrorClass classify(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trigonal
