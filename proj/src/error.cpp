#include "qso/error.hpp"

namespace qso {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::RowNotNormalized: return "RowNotNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::ScheduleExhausted: return "ScheduleExhausted";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code) {}

}  // namespace qso
