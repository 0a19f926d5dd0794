#include "rdoc/error.hpp"

namespace rdoc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ReservedSymbol: return "ReservedSymbol";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::IOError: return "IOError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::UnknownTask: return "UnknownTask";
  }
  return "Unknown";
}

}  // namespace rdoc
