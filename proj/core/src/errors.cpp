#include "vlcsync/errors.hpp"

namespace vlcsync {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PrefixViolation: return "PrefixViolation";
    case ErrorCode::DuplicateCodeword: return "DuplicateCodeword";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::DeadEnd: return "DeadEnd";
    case ErrorCode::MissingChild: return "MissingChild";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::NotAbsorbed: return "NotAbsorbed";
    case ErrorCode::NotCoprime: return "NotCoprime";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace vlcsync
