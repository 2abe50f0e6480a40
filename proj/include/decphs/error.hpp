#pragma once

#include <stdexcept>
#include <string>

namespace decphs {

enum class ErrorKind {
  NonManifold,
  InconsistentOrientation,
  DegenerateSimplex,
  NotWellCentered,
  IndexOutOfRange,
  QuadratureUnsupported,
  LocusMismatch,
  DegreeMismatch,
  DegreeOutOfRange,
  ZeroVolume,
  BadDegreePair,
  DimensionMismatch,
  NotOneDimensional,
  NotThreeDimensional,
  NonPositiveMaterial,
  NegativeR,
  UnstableStep,
  OutOfDomain,
  InsufficientPoints,
  ParseError,
  IoError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace decphs
