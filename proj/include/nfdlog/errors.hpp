#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nfdlog {

enum class Errc {
  ZeroPolynomial,
  NotPrime,
  NotSimpleRoot,
  NotRoot,
  NotMonic,
  Reducible,
  IrreducibilityUnknown,
  MonogenicityUnknown,
  ZeroElement,
  PrecisionLoss,
  PrecisionExceeded,
  FieldMismatch,
  Unfactored,
  DomainError,
  DegenerateField,
  SearchSpaceExhausted,
  RankDeficient,
  BoundsUnsatisfiable,
  NoSmoothFound,
  NotContained,
  DescentStuck,
  NormTooLarge,
  NoSolution,
  NotInSubgroup,
  BadDiscriminant,
  TooLarge,
  InvalidInput,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotSimpleRoot: return "NotSimpleRoot";
    case Errc::NotRoot: return "NotRoot";
    case Errc::NotMonic: return "NotMonic";
    case Errc::Reducible: return "Reducible";
    case Errc::IrreducibilityUnknown: return "IrreducibilityUnknown";
    case Errc::MonogenicityUnknown: return "MonogenicityUnknown";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::PrecisionLoss: return "PrecisionLoss";
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::Unfactored: return "Unfactored";
    case Errc::DomainError: return "DomainError";
    case Errc::DegenerateField: return "DegenerateField";
    case Errc::SearchSpaceExhausted: return "SearchSpaceExhausted";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::BoundsUnsatisfiable: return "BoundsUnsatisfiable";
    case Errc::NoSmoothFound: return "NoSmoothFound";
    case Errc::NotContained: return "NotContained";
    case Errc::DescentStuck: return "DescentStuck";
    case Errc::NormTooLarge: return "NormTooLarge";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotInSubgroup: return "NotInSubgroup";
    case Errc::BadDiscriminant: return "BadDiscriminant";
    case Errc::TooLarge: return "TooLarge";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Failure states that are mathematical outcomes rather than bad input.
/// The CLI reports these with exit status 2.
constexpr bool is_mathematical_failure(Errc c) {
  return c == Errc::RankDeficient || c == Errc::DescentStuck ||
         c == Errc::NotInSubgroup || c == Errc::SearchSpaceExhausted ||
         c == Errc::NoSmoothFound || c == Errc::Unfactored ||
         c == Errc::NoSolution;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nfdlog
