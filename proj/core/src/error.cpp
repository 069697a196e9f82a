#include "nfrlens/error.hpp"

namespace nfrlens {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kMalformedRecord: return "MalformedRecord";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kSpanOutOfBounds: return "SpanOutOfBounds";
    case ErrorKind::kNoSentences: return "NoSentences";
    case ErrorKind::kNoWords: return "NoWords";
    case ErrorKind::kEmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::kInconsistentDimension: return "InconsistentDimension";
    case ErrorKind::kMalformedFloat: return "MalformedFloat";
    case ErrorKind::kEmptyFile: return "EmptyFile";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
      kind_(kind) {}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

void fail_at_line(ErrorKind kind, std::size_t line, const std::string& detail) {
  throw Error(kind, "line " + std::to_string(line) + ": " + detail);
}

}  // namespace nfrlens
