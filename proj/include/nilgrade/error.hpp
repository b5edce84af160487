#pragma once

#include <stdexcept>
#include <string>

namespace nilgrade {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  SecondExtensionRequired,
  NotNilpotent,
  NotNilpotentMatrix,
  SingularMatrix,
  Inconsistent,
  ElementInSquare,
  DimensionTooSmall,
  DegenerateParams,
  ConstraintViolation,
  InadmissibleChange,
  UnclassifiedParameters,
  BudgetExhausted,
  BadPrime,
  ParseError,
  NotAFamily,
  NotAssociative,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nilgrade
