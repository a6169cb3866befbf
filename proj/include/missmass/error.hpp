#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace missmass {

enum class ErrorCode {
  kEmpty,
  kNegativeMass,
  kNotNormalized,
  kZeroSum,
  kTooLarge,
  kNoBracket,
  kInvalidB,
  kInvalidAlphabet,
  kInvalidArgument,
  kParse,
  kIo,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kEmpty: return "EMPTY";
    case ErrorCode::kNegativeMass: return "NEGATIVE_MASS";
    case ErrorCode::kNotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::kZeroSum: return "ZERO_SUM";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kNoBracket: return "NO_BRACKET";
    case ErrorCode::kInvalidB: return "INVALID_B";
    case ErrorCode::kInvalidAlphabet: return "INVALID_ALPHABET";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kIo: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Exception carrying a stable error code; what() is "<CODE>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace missmass
