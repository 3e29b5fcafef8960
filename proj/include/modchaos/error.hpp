#pragma once

#include <stdexcept>
#include <string>

namespace modchaos {

// Stable error categories; mirrored one-to-one by the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  HorizonExceeded = 2,
  AlphabetMismatch = 3,
  SymbolOutOfRange = 4,
  EmptyBlock = 5,
  DepthExceeded = 6,
  BudgetExceeded = 7,
  IncompatibleDescriptors = 8,
  ModuleMismatch = 9,
  InvalidOffset = 10,
  RangesOverlap = 11,
  NotFound = 12,
  ParseError = 13,
  Internal = 14,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

const char* error_code_name(ErrorCode code) noexcept;

}  // namespace modchaos
