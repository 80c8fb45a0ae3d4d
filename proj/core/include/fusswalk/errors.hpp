#pragma once

#include <stdexcept>
#include <string>

namespace fusswalk {

/// Machine-checkable reason attached to every library error.
enum class ErrorCode {
  kRejectNegativePrefix,
  kRejectNonzeroTotal,
  kRejectLength,
  kBadCharacter,
  kCapExceeded,
  kEmptyPath,
  kEmptyTree,
  kNotSpanning,
  kCrossing,
  kEdgeNotInTree,
  kSizeMismatch,
  kNotAdjacent,
  kNotAdjacentMove,
  kDominanceViolated,
  kShiftPreconditionViolated,
  kIndexOutOfRange,
  kNoPreimage,
  kDimensionMismatch,
  kInternal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace fusswalk
