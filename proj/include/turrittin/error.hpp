#pragma once

#include <stdexcept>
#include <string>

namespace turrittin {

enum class ErrorCode {
  DivisionByZero,
  IncompatibleField,
  SignOfComplex,
  UnsupportedTower,
  DegreeCapExceeded,
  ZeroJet,
  ZeroSystem,
  InsufficientPrecision,
  SingularGauge,
  NotCoprime,
  DegreeMismatch,
  SpectrumMismatch,
  CommonEigenvalue,
  NotACMatrix,
  BZero,
  SpectraNotDisjoint,
  ResonantResidual,
  WrongSpectrum,
  PreconditionViolated,
  ParseError,
  InvalidFieldDescriptor,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Thrown when a jet operation would need coefficients beyond the guaranteed order.
// `required` is the relative input order that would have sufficed, or -1 when unknown.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, long required = -1)
      : Error(ErrorCode::InsufficientPrecision, what), required_(required) {}

  long required() const { return required_; }

 private:
  long required_;
};

}  // namespace turrittin
