#pragma once

#include <stdexcept>
#include <string>

namespace qso {

// Every failure raised by the library carries one of these codes. The code
// name is embedded verbatim in the exception message so callers (and the CLI,
// which forwards messages to stderr) can tell validation failures apart
// without string matching on free-form text.
enum class ErrorCode {
  NegativeCoordinate,
  NotNormalized,
  EmptyVector,
  NegativeEntry,
  SymmetryViolation,
  RowNotNormalized,
  DimensionMismatch,
  IndexOutOfRange,
  EmptyRange,
  InvalidDimension,
  ScheduleExhausted,
  DegenerateSample,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qso
