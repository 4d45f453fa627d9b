#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dethom {

enum class ErrorCode {
  ZeroInverse,
  DenominatorVanishes,
  NotPrime,
  ArityMismatch,
  ZeroInput,
  ZeroDirection,
  ExponentOverflow,
  DegreeTooLargeForChar,
  ModuliNotCoprime,
  ReconstructionFailed,
  DimensionTooLarge,
  DimensionMismatch,
  NotSquarefree,
  DegreeBound,
  LinearFormMismatch,
  ResidualNonzero,
  SharedRoots,
  FieldTooLarge,
  ResourceBudgetExceeded,
  PositiveDimension,
  NotSeparating,
  NotRadical,
  ShapeError,
  NonIntegralBound,
  SingularJacobian,
  DenominatorVanishesAtOne,
  DimensionConstraint,
  ParseError,
  DegenerateInput,
  RetriesExhausted,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::DegreeTooLargeForChar: return "DegreeTooLargeForChar";
    case ErrorCode::ModuliNotCoprime: return "ModuliNotCoprime";
    case ErrorCode::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::DegreeBound: return "DegreeBound";
    case ErrorCode::LinearFormMismatch: return "LinearFormMismatch";
    case ErrorCode::ResidualNonzero: return "ResidualNonzero";
    case ErrorCode::SharedRoots: return "SharedRoots";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::PositiveDimension: return "PositiveDimension";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::NotRadical: return "NotRadical";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::NonIntegralBound: return "NonIntegralBound";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::DenominatorVanishesAtOne: return "DenominatorVanishesAtOne";
    case ErrorCode::DimensionConstraint: return "DimensionConstraint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index` carries the offending
/// equation / coefficient / subset index where one exists, else -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what, long index = -1) {
  throw Error(code, what, index);
}

}  // namespace dethom
