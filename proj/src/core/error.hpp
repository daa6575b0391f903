#ifndef CBIR_CORE_ERROR_HPP
#define CBIR_CORE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cbir {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  CorruptImage,
  InvalidParameter,
  ImageTooSmall,
  EmptyRect,
  RectTooSmall,
  DimensionMismatch,
  EmptyRegionList,
  ParameterMismatch,
  IoError,
  FormatVersionMismatch,
  CorruptRecord,
  EmptyIndex,
  InsufficientResults,
  MissingCategory,
  UnlabeledImage,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptImage: return "CorruptImage";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::EmptyRect: return "EmptyRect";
    case ErrorCode::RectTooSmall: return "RectTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyRegionList: return "EmptyRegionList";
    case ErrorCode::ParameterMismatch: return "ParameterMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::CorruptRecord: return "CorruptRecord";
    case ErrorCode::EmptyIndex: return "EmptyIndex";
    case ErrorCode::InsufficientResults: return "InsufficientResults";
    case ErrorCode::MissingCategory: return "MissingCategory";
    case ErrorCode::UnlabeledImage: return "UnlabeledImage";
  }
  return "UnknownError";
}

}  // namespace cbir

#endif
