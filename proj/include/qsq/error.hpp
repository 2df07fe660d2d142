#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsq {

enum class ErrorCode {
  DuplicateRegister,
  ZeroWidth,
  UnallocatedWire,
  SameWire,
  WidthMismatch,
  OverlappingOperands,
  UnsupportedWidth,
  Unexpanded,
  UncomputeMisuse,
  AndTargetNotClean,
  NonClassicalGate,
  TooManyWires,
  NormDrift,
  UnknownDesign,
  ParityMismatch,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception; `code()` identifies the failure class for callers
/// that need to branch on it (tests, CLI exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsq
