#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zdzeta {

enum class ErrorKind {
  UnsupportedDimension,
  InvalidIndex,
  NotFiniteIndex,
  NoSolution,
  ZeroPolynomial,
  ZeroArgument,
  NotPrime,
  EqualPrimes,
  NotAUnit,
  InvalidSpec,
  NotMixing,
  InfiniteFixedSet,
  NoDefiningPoly,
  UnliftableInversion,
  OutOfBudget,
  UnnormalizedImage,
  NotEntropyRankOne,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::InvalidIndex: return "InvalidIndex";
    case ErrorKind::NotFiniteIndex: return "NotFiniteIndex";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::EqualPrimes: return "EqualPrimes";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotMixing: return "NotMixing";
    case ErrorKind::InfiniteFixedSet: return "InfiniteFixedSet";
    case ErrorKind::NoDefiningPoly: return "NoDefiningPoly";
    case ErrorKind::UnliftableInversion: return "UnliftableInversion";
    case ErrorKind::OutOfBudget: return "OutOfBudget";
    case ErrorKind::UnnormalizedImage: return "UnnormalizedImage";
    case ErrorKind::NotEntropyRankOne: return "NotEntropyRankOne";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error: the request is well-formed but mathematically inadmissible.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Broken engine invariant (e.g. a non-integral zeta coefficient).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace zdzeta
