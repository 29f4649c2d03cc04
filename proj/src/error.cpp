#include "wavemark/error.hpp"

namespace wavemark {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::CorruptImage: return "CorruptImage";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidDimensions: return "InvalidDimensions";
    case ErrorKind::OddDimensions: return "OddDimensions";
    case ErrorKind::MismatchedPlanes: return "MismatchedPlanes";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WatermarkTooLarge: return "WatermarkTooLarge";
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind), detail_(detail) {}

}  // namespace wavemark
