#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperblock {

enum class ErrorCode {
  // input / configuration
  InadmissibleOrder,
  BothZero,
  Overflow,
  CapExceeded,
  ModeMismatch,
  ZeroVector,
  NotApplicable,
  WrongOrder,
  BadSizes,
  InvalidMatrix,
  IOError,
  // construction or verification failures
  ClosureSizeMismatch,
  DegenerateBlock,
  CountMismatch,
  SchemeViolation,
  NotAPBIBD,
  NotConnected,
  NotClosedSurface,
  LinkNotTorus,
  NotASphere,
  NotACircle,
};

std::string_view to_string(ErrorCode code);

/// True for codes that mean "a claim was checked and did not hold", as
/// opposed to bad input.
bool is_verification_failure(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace hyperblock
