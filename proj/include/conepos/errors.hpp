#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conepos {

enum class ErrorKind {
  NotPointed,
  NotFullDim,
  NotIndependent,
  VNotOutside,
  ZeroCone,
  DimensionMismatch,
  PreconditionViolated,
  NotContained,
  NotElementaryInput,
  LayerSearchExhausted,
  NoSecondPoint,
  MuNotDecreasing,
  StepVerificationFailed,
  NotUnimodular,
  RetriesExhausted,
  StuckNoDescent,
  MalformedInput,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotFullDim: return "NotFullDim";
    case ErrorKind::NotIndependent: return "NotIndependent";
    case ErrorKind::VNotOutside: return "VNotOutside";
    case ErrorKind::ZeroCone: return "ZeroCone";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotElementaryInput: return "NotElementaryInput";
    case ErrorKind::LayerSearchExhausted: return "LayerSearchExhausted";
    case ErrorKind::NoSecondPoint: return "NoSecondPoint";
    case ErrorKind::MuNotDecreasing: return "MuNotDecreasing";
    case ErrorKind::StepVerificationFailed: return "StepVerificationFailed";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::StuckNoDescent: return "StuckNoDescent";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// that callers (and the CLI exit-code mapping) can dispatch on it.
class ConeError : public std::runtime_error {
 public:
  ConeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw ConeError(kind, what);
}

}  // namespace conepos
