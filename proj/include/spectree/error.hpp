#pragma once

#include <stdexcept>
#include <string>

namespace spectree {

enum class ErrorCode {
  InvalidParameter,
  CapacityExceeded,
  IndexOutOfRange,
  RootHasNoParent,
  AssumptionViolated,
  NumericalRankFailure,
  OnSpectrum,
  OutOfDisk,
  BranchFailure,
  SingularOnContour,
  NonConvergent,
  NotIsolated,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Every failure carries one of the codes above so
/// the CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spectree
