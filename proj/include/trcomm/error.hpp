#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trcomm {

enum class ErrorCode {
  // ring_core
  DivisionByZero,
  FieldMismatch,
  InvalidModulus,
  ContextMismatch,
  TruncationOverflow,
  NonInvertibleLeadingCoefficient,
  InfiniteRing,
  NotAUnit,
  ParseError,
  // matrix_core
  ShapeMismatch,
  SingularBasis,
  NonConstantEntries,
  NotNilpotent,
  // witness
  NotUpperTriangular,
  NonzeroTrace,
  NotHollow,
  CliqueTooSmall,
  NonInvertibleDifference,
  DifferenceNotAUnit,
  WitnessVerificationFailed,
  // packing
  DimensionMismatch,
  NonUniqueConflict,
  PreconditionViolated,
  SetTooSmall,
  // certificate
  NotSeparated,
  WrongSimplex,
  TooFewPoints,
  BadDimensions,
  MalformedInput,
  ValidationFailed,
  // oracle
  BudgetExceeded,
  NoSquareRootOfMinusOne,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::NonInvertibleLeadingCoefficient: return "NonInvertibleLeadingCoefficient";
    case ErrorCode::InfiniteRing: return "InfiniteRing";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::NonConstantEntries: return "NonConstantEntries";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotUpperTriangular: return "NotUpperTriangular";
    case ErrorCode::NonzeroTrace: return "NonzeroTrace";
    case ErrorCode::NotHollow: return "NotHollow";
    case ErrorCode::CliqueTooSmall: return "CliqueTooSmall";
    case ErrorCode::NonInvertibleDifference: return "NonInvertibleDifference";
    case ErrorCode::DifferenceNotAUnit: return "DifferenceNotAUnit";
    case ErrorCode::WitnessVerificationFailed: return "WitnessVerificationFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonUniqueConflict: return "NonUniqueConflict";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::SetTooSmall: return "SetTooSmall";
    case ErrorCode::NotSeparated: return "NotSeparated";
    case ErrorCode::WrongSimplex: return "WrongSimplex";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::BadDimensions: return "BadDimensions";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoSquareRootOfMinusOne: return "NoSquareRootOfMinusOne";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code; the
/// message starts with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
        code_(code) {}
  explicit Error(ErrorCode code) : Error(code, "") {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace trcomm
