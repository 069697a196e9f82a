#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nfrlens {

enum class ErrorKind {
  kIo,
  kMalformedRecord,
  kUnknownLabel,
  kDuplicateId,
  kSpanOutOfBounds,
  kNoSentences,
  kNoWords,
  kEmptyTrainingSet,
  kInconsistentDimension,
  kMalformedFloat,
  kEmptyFile,
  kZeroVector,
  kDimensionMismatch,
  kInsufficientData,
  kLengthMismatch,
  kEmptyInput,
  kInvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

// All library failures are reported through this exception. The kind is the
// stable, testable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);
[[noreturn]] void fail_at_line(ErrorKind kind, std::size_t line,
                               const std::string& detail);

}  // namespace nfrlens
