#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fixprov {

enum class ErrorCode {
  CarrierMismatch,
  NotAbsorptive,
  DualityViolated,
  InvalidValue,
  Overflow,
  MalformedFormula,
  GfpUnsupportedCarrier,
  IterationDiverged,
  WideningDiverged,
  NotModelDefining,
  NotModelCompatible,
  TooManyModels,
  StrategySpaceTooLarge,
  UnsupportedNesting,
  ParseError,
  UnknownRelation,
  ArityMismatch,
  SchemaError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CarrierMismatch: return "CarrierMismatch";
    case ErrorCode::NotAbsorptive: return "NotAbsorptive";
    case ErrorCode::DualityViolated: return "DualityViolated";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::MalformedFormula: return "MalformedFormula";
    case ErrorCode::GfpUnsupportedCarrier: return "GfpUnsupportedCarrier";
    case ErrorCode::IterationDiverged: return "IterationDiverged";
    case ErrorCode::WideningDiverged: return "WideningDiverged";
    case ErrorCode::NotModelDefining: return "NotModelDefining";
    case ErrorCode::NotModelCompatible: return "NotModelCompatible";
    case ErrorCode::TooManyModels: return "TooManyModels";
    case ErrorCode::StrategySpaceTooLarge: return "StrategySpaceTooLarge";
    case ErrorCode::UnsupportedNesting: return "UnsupportedNesting";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Error";
}

}  // namespace fixprov
