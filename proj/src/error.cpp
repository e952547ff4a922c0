#include "spectree/error.hpp"

namespace spectree {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::RootHasNoParent: return "RootHasNoParent";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::NumericalRankFailure: return "NumericalRankFailure";
    case ErrorCode::OnSpectrum: return "OnSpectrum";
    case ErrorCode::OutOfDisk: return "OutOfDisk";
    case ErrorCode::BranchFailure: return "BranchFailure";
    case ErrorCode::SingularOnContour: return "SingularOnContour";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace spectree
