#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qforge {

enum class ErrorCode {
    NotHermitian,
    TraceNotOne,
    NotPositive,
    NotNormalized,
    NotUnitary,
    OutOfRange,
    BadWeights,
    BadNorm,
    BadF,
    MismatchedDecoherers,
    TargetOutOfRange,
    TimingCollision,
    UnsupportedTarget,
    ParseError,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. The code identifies the violated
/// contract, the message carries the offending values.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace qforge
