#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavemark {

enum class ErrorKind {
  FileNotFound,
  UnsupportedFormat,
  CorruptImage,
  IoError,
  InvalidDimensions,
  OddDimensions,
  MismatchedPlanes,
  DimensionMismatch,
  WatermarkTooLarge,
  InvalidParam,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind; what() starts with the
// kind name, e.g. "OddDimensions: cover is 511x512".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  // Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace wavemark
