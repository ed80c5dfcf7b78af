#pragma once

#include <stdexcept>
#include <string>

namespace entlab {

enum class ErrorCode {
  InvalidParameter,
  NotNormal,
  NumericFailure,
  BranchAmbiguity,
  TooLarge,
  UnsupportedInvariant,
  InvalidSubgroup,
  IoFailure,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::NotNormal: return "not-normal";
    case ErrorCode::NumericFailure: return "numeric-failure";
    case ErrorCode::BranchAmbiguity: return "branch-ambiguity";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::UnsupportedInvariant: return "unsupported-invariant";
    case ErrorCode::InvalidSubgroup: return "invalid-subgroup";
    case ErrorCode::IoFailure: return "io-failure";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace entlab
