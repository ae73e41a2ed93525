#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdiss {

enum class ErrorCode {
  DimensionMismatch,
  NotALattice,
  NotAQuantale,
  NotIntegral,
  NotCyclic,
  NotDualizing,
  NotInvolutive,
  NotDivisible,
  NotAFrame,
  NotBoolean,
  NonClosed,
  TooLarge,
  TypeMismatch,
  ModePreconditionFailed,
  NotASimilarity,
  NotADissimilarity,
  IllTyped,
  NotLax,
  ParseError,
  UnknownName,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotAQuantale: return "NotAQuantale";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NotDualizing: return "NotDualizing";
    case ErrorCode::NotInvolutive: return "NotInvolutive";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NotBoolean: return "NotBoolean";
    case ErrorCode::NonClosed: return "NonClosed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::ModePreconditionFailed: return "ModePreconditionFailed";
    case ErrorCode::NotASimilarity: return "NotASimilarity";
    case ErrorCode::NotADissimilarity: return "NotADissimilarity";
    case ErrorCode::IllTyped: return "IllTyped";
    case ErrorCode::NotLax: return "NotLax";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownName: return "UnknownName";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a code and a human-readable
/// message that includes a witness when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qdiss
