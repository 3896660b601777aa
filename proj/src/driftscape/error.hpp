#pragma once

#include <stdexcept>
#include <string>

namespace driftscape {

enum class ErrorCode {
  WrongMagic,
  TruncatedFile,
  LabelOutOfRange,
  EmptyClass,
  EmptyWindow,
  DegenerateWindow,
  RankDeficient,
  TooFewPoints,
  DimensionMismatch,
  TooFewValues,
  NonFiniteInput,
  SampleTooSmall,
  SeriesTooShort,
  ConfigInvalid,
  IoError,
};

// Coarse grouping used for C API status codes and CLI exit codes.
enum class ErrorCategory { Config, Data, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  ErrorCategory category() const noexcept {
    switch (code_) {
      case ErrorCode::ConfigInvalid:
      case ErrorCode::SampleTooSmall:
      case ErrorCode::SeriesTooShort:
      case ErrorCode::TooFewPoints:
      case ErrorCode::TooFewValues:
      case ErrorCode::EmptyWindow:
      case ErrorCode::DimensionMismatch:
        return ErrorCategory::Config;
      case ErrorCode::WrongMagic:
      case ErrorCode::TruncatedFile:
      case ErrorCode::LabelOutOfRange:
      case ErrorCode::EmptyClass:
      case ErrorCode::DegenerateWindow:
      case ErrorCode::RankDeficient:
      case ErrorCode::NonFiniteInput:
      case ErrorCode::IoError:
        return ErrorCategory::Data;
    }
    return ErrorCategory::Internal;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace driftscape
