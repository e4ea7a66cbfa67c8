#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frobdyn {

enum class ErrorKind {
  NonPrimeP,
  ReducibleModulus,
  DegreeMismatch,
  FieldMismatch,
  DivisionByZero,
  NonUnitDivisor,
  IndistinguishableFromZero,
  PrecisionExhausted,
  DimensionMismatch,
  NotInImage,
  UnsupportedQ,
  NotInvertible,
  SearchExhausted,
  NonConstantMatrix,
  PreconditionMatrixNotIdentityModT,
  NonCanonicalBasePoint,
  PrecisionTooLow,
  ResidueDegreeUnknown,
  PrecisionBelowThreshold,
  DegreeOverflow,
  InvalidArgument,
  ParseError,
  ValidationFailure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace frobdyn
