// Error type shared by every module; codes mirror the C API status values.
#pragma once

#include <stdexcept>
#include <string>

namespace bhst {

enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNegativeEntry = 2,
  kSingularMatrix = 3,
  kNoAtomDecomposition = 4,
  kDeterminantNotDividing = 5,
  kDomain = 6,
  kPrecisionExhausted = 7,
  kCapacity = 8,
  kHypothesis = 9,
  kUnsupported = 10,
  kInternal = 11,
  kParse = 12,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// Internal consistency check that stays on in release builds.
inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::kInternal, "internal consistency check failed: " + what);
}

}  // namespace bhst
