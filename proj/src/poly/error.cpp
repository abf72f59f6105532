#include "cremona/error.hpp"

namespace cremona {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kVariableMismatch: return "variable-mismatch";
    case ErrorCode::kArity: return "arity";
    case ErrorCode::kZeroInput: return "zero-input";
    case ErrorCode::kNotHomogeneous: return "not-homogeneous";
    case ErrorCode::kDegreeCap: return "degree-cap";
    case ErrorCode::kInverseUnavailable: return "inverse-unavailable";
    case ErrorCode::kCandidateRejected: return "candidate-rejected";
    case ErrorCode::kIrrationalBaseLocus: return "irrational-base-locus";
    case ErrorCode::kHeightCap: return "height-cap";
    case ErrorCode::kInvalidComplex: return "invalid-complex";
    case ErrorCode::kUnreachable: return "unreachable";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace cremona
