#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algebroid {

enum class ErrorCode {
  NotPrime,
  ReduciblePolynomial,
  NoRationalRoot,
  CharZero,
  SearchSpaceTooLarge,
  VariableMismatch,
  FieldMismatch,
  OrderZeroArgument,
  OrderNotOne,
  PrecisionExhausted,
  ZeroPolynomial,
  NonPrimitive,
  ValueMapViolation,
  BadCharacteristic,
  MalformedSequence,
  DuplicateBranch,
  NonTerminating,
  NotMinimalGenerators,
  InfiniteInvariant,
  UndeterminedDimension,
  CharTwo,
  InfiniteTjurina,
  UndeterminedSubtype,
  DegenerateFamily,
  NonPrimitiveFiber,
  SyntaxError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto `{error, message, context}`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace algebroid
