#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclo {

enum class ErrorCode {
  InvalidArgument,
  NotPrime,
  NotPrimitive,
  Disconnected,
  BoundExceeded,
  ZeroElement,
  ZeroResidue,
  UndefinedSum,
  BadResidue,
  PrecisionInsufficient,
  FactorizationBoundExceeded,
  // Mathematical mismatches. Any of these indicates an implementation bug.
  ConservationViolation,
  SrgViolation,
  MismatchFound,
  SnfMismatch,
  MethodMismatch,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::ZeroResidue: return "ZeroResidue";
    case ErrorCode::UndefinedSum: return "UndefinedSum";
    case ErrorCode::BadResidue: return "BadResidue";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::FactorizationBoundExceeded: return "FactorizationBoundExceeded";
    case ErrorCode::ConservationViolation: return "ConservationViolation";
    case ErrorCode::SrgViolation: return "SrgViolation";
    case ErrorCode::MismatchFound: return "MismatchFound";
    case ErrorCode::SnfMismatch: return "SnfMismatch";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
  }
  return "Unknown";
}

/// True for errors that signal a failed mathematical cross-check rather
/// than bad input or resource limits.
constexpr bool is_mismatch(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConservationViolation:
    case ErrorCode::SrgViolation:
    case ErrorCode::MismatchFound:
    case ErrorCode::SnfMismatch:
    case ErrorCode::MethodMismatch:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cyclo
