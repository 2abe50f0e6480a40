#include "decphs/error.hpp"

namespace decphs {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonManifold: return "NonManifold";
    case ErrorKind::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorKind::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorKind::NotWellCentered: return "NotWellCentered";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::QuadratureUnsupported: return "QuadratureUnsupported";
    case ErrorKind::LocusMismatch: return "LocusMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::ZeroVolume: return "ZeroVolume";
    case ErrorKind::BadDegreePair: return "BadDegreePair";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotOneDimensional: return "NotOneDimensional";
    case ErrorKind::NotThreeDimensional: return "NotThreeDimensional";
    case ErrorKind::NonPositiveMaterial: return "NonPositiveMaterial";
    case ErrorKind::NegativeR: return "NegativeR";
    case ErrorKind::UnstableStep: return "UnstableStep";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InsufficientPoints: return "InsufficientPoints";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace decphs
