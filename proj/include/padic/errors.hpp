#pragma once

#include <stdexcept>
#include <string>

namespace padic {

enum class Err {
  ParseError,
  InvalidPrime,
  DivisionByZero,
  NegativeValuation,
  ZeroInput,
  NormNotOne,
  ZeroVector,
  DependentInput,
  NotFullRank,
  DimensionMismatch,
  BadSubset,
  EmptyData,
  TooLarge,
  NonStabilizing,
  PrecisionTooLow,
  WrongDimension,
};

const char* err_name(Err kind);

/// Domain error with a machine-checkable kind. Parse errors map to CLI exit
/// code 1, everything else to 2.
class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg),
        kind_(kind) {}

  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline const char* err_name(Err kind) {
  switch (kind) {
    case Err::ParseError: return "ParseError";
    case Err::InvalidPrime: return "InvalidPrime";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::NegativeValuation: return "NegativeValuation";
    case Err::ZeroInput: return "ZeroInput";
    case Err::NormNotOne: return "NormNotOne";
    case Err::ZeroVector: return "ZeroVector";
    case Err::DependentInput: return "DependentInput";
    case Err::NotFullRank: return "NotFullRank";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::BadSubset: return "BadSubset";
    case Err::EmptyData: return "EmptyData";
    case Err::TooLarge: return "TooLarge";
    case Err::NonStabilizing: return "NonStabilizing";
    case Err::PrecisionTooLow: return "PrecisionTooLow";
    case Err::WrongDimension: return "WrongDimension";
  }
  return "Error";
}

}  // namespace padic
