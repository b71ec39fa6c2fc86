#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circot {

enum class ErrorCode {
  EmptyHistogram,
  LengthMismatch,
  NonFinite,
  NonPositiveMass,
  MassSumMismatch,
  InvalidArgument,
  UnknownGrowth,
  UnknownBracket,
  InvalidEpsilon,
  IterationLimit,
  TooLarge,
  NoDenominator,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI and the Python layer can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace circot
