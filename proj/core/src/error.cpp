#include "algebroid/error.hpp"

namespace algebroid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorCode::NoRationalRoot: return "NoRationalRoot";
    case ErrorCode::CharZero: return "CharZero";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::OrderZeroArgument: return "OrderZeroArgument";
    case ErrorCode::OrderNotOne: return "OrderNotOne";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::ValueMapViolation: return "ValueMapViolation";
    case ErrorCode::BadCharacteristic: return "BadCharacteristic";
    case ErrorCode::MalformedSequence: return "MalformedSequence";
    case ErrorCode::DuplicateBranch: return "DuplicateBranch";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::NotMinimalGenerators: return "NotMinimalGenerators";
    case ErrorCode::InfiniteInvariant: return "InfiniteInvariant";
    case ErrorCode::UndeterminedDimension: return "UndeterminedDimension";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::InfiniteTjurina: return "InfiniteTjurina";
    case ErrorCode::UndeterminedSubtype: return "UndeterminedSubtype";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::NonPrimitiveFiber: return "NonPrimitiveFiber";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace algebroid
