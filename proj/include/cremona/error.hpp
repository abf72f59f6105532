#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

// Every failure that crosses a module boundary carries one of these codes.
// The CLI maps them one-to-one onto process exit codes (see README).
enum class ErrorCode : int {
  kSyntax = 2,
  kVariableMismatch = 3,
  kArity = 4,
  kZeroInput = 5,
  kNotHomogeneous = 6,
  kDegreeCap = 7,
  kInverseUnavailable = 8,
  kCandidateRejected = 9,
  kIrrationalBaseLocus = 10,
  kHeightCap = 11,
  kInvalidComplex = 12,
  kUnreachable = 13,
  kBudgetExceeded = 14,
  kPrecondition = 15,
  kIo = 16,
  kInternal = 17,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cremona
