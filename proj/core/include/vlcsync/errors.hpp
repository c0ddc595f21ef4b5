#pragma once

#include <stdexcept>
#include <string>

namespace vlcsync {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  PrefixViolation,
  DuplicateCodeword,
  UnknownSymbol,
  DeadEnd,
  MissingChild,
  ZeroMass,
  NotConverged,
  NotAbsorbed,
  NotCoprime,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` tells the failure apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vlcsync
