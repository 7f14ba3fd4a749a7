#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chlab {

enum class ErrorCode {
  NonFinite,
  DegenerateConfiguration,
  ZeroVector,
  NotInBall,
  DefectiveMatrix,
  NotFormPreserving,
  NotElliptic,
  NullPolarVector,
  NonRealizable,
  SignatureError,
  TrivialRotation,
  DegenerateTriple,
  NotPolarVectors,
  ReducibleTriple,
  TypeUnavailable,
  NotDecomposable,
  DegenerateGeometry,
  MixedNotSupported,
  NotDecomposableClasses,
  EmptyDomain,
  OutOfChart,
  NotInsideDeltoid,
  InvalidRelation,
  NotUnitModulus,
  NotRegularElliptic,
  InvalidSignature,
  ParseError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInBall: return "NotInBall";
    case ErrorCode::DefectiveMatrix: return "DefectiveMatrix";
    case ErrorCode::NotFormPreserving: return "NotFormPreserving";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::NullPolarVector: return "NullPolarVector";
    case ErrorCode::NonRealizable: return "NonRealizable";
    case ErrorCode::SignatureError: return "SignatureError";
    case ErrorCode::TrivialRotation: return "TrivialRotation";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::NotPolarVectors: return "NotPolarVectors";
    case ErrorCode::ReducibleTriple: return "ReducibleTriple";
    case ErrorCode::TypeUnavailable: return "TypeUnavailable";
    case ErrorCode::NotDecomposable: return "NotDecomposable";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::MixedNotSupported: return "MixedNotSupported";
    case ErrorCode::NotDecomposableClasses: return "NotDecomposableClasses";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::OutOfChart: return "OutOfChart";
    case ErrorCode::NotInsideDeltoid: return "NotInsideDeltoid";
    case ErrorCode::InvalidRelation: return "InvalidRelation";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::NotRegularElliptic: return "NotRegularElliptic";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chlab
