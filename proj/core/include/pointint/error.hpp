#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pointint {

enum class ErrorCode {
  // validation
  InvalidArgument,
  // numerical
  SingularExtension,
  SingularU,
  SingularDet,
  BranchAmbiguity,
  DegenerateMu,
  AlphaZero,
  Overflow,
  FusionSingular,
  TruncationNotConverged,
  ZeroWronskian,
  NotTransverse,
  SingularInput,
  NotPositiveDefinite,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularExtension: return "SingularExtension";
    case ErrorCode::SingularU: return "SingularU";
    case ErrorCode::SingularDet: return "SingularDet";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::DegenerateMu: return "DegenerateMu";
    case ErrorCode::AlphaZero: return "AlphaZero";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::FusionSingular: return "FusionSingular";
    case ErrorCode::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorCode::ZeroWronskian: return "ZeroWronskian";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
  }
  return "Unknown";
}

/// Single exception type for the library. Callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_validation() const noexcept { return code_ == ErrorCode::InvalidArgument; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace pointint
