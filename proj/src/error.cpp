#include "turrittin/error.hpp"

namespace turrittin {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::IncompatibleField: return "incompatible-descriptors";
    case ErrorCode::SignOfComplex: return "sign-of-complex";
    case ErrorCode::UnsupportedTower: return "unsupported-tower";
    case ErrorCode::DegreeCapExceeded: return "degree-cap-exceeded";
    case ErrorCode::ZeroJet: return "zero-jet";
    case ErrorCode::ZeroSystem: return "zero-system";
    case ErrorCode::InsufficientPrecision: return "insufficient-precision";
    case ErrorCode::SingularGauge: return "singular-P";
    case ErrorCode::NotCoprime: return "not-coprime";
    case ErrorCode::DegreeMismatch: return "degree-mismatch";
    case ErrorCode::SpectrumMismatch: return "spectrum-mismatch";
    case ErrorCode::CommonEigenvalue: return "common-eigenvalue";
    case ErrorCode::NotACMatrix: return "not-a-C-matrix";
    case ErrorCode::BZero: return "b-zero";
    case ErrorCode::SpectraNotDisjoint: return "spectra-not-disjoint";
    case ErrorCode::ResonantResidual: return "resonant-residual";
    case ErrorCode::WrongSpectrum: return "wrong-spectrum";
    case ErrorCode::PreconditionViolated: return "precondition-violated";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::InvalidFieldDescriptor: return "invalid-field-descriptor";
    case ErrorCode::Internal: return "internal-error";
  }
  return "unknown";
}

}  // namespace turrittin
