#include "circlet/error.hpp"

namespace circlet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ReflectionHasNoLog: return "ReflectionHasNoLog";
    case ErrorKind::NonUniqueArc: return "NonUniqueArc";
    case ErrorKind::DiameterTooLarge: return "DiameterTooLarge";
    case ErrorKind::EmptyOverlap: return "EmptyOverlap";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DegreeUnsupported: return "DegreeUnsupported";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::TooFewSamples: return "TooFewSamples";
    case ErrorKind::BracketAmbiguous: return "BracketAmbiguous";
    case ErrorKind::NotASurface: return "NotASurface";
    case ErrorKind::InconsistentClusters: return "InconsistentClusters";
    case ErrorKind::PropagationConflict: return "PropagationConflict";
    case ErrorKind::UncoveredPoint: return "UncoveredPoint";
    case ErrorKind::EigengapTooSmall: return "EigengapTooSmall";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotTrivializable: return "NotTrivializable";
    case ErrorKind::SectionUndefined: return "SectionUndefined";
    case ErrorKind::LiftUndefined: return "LiftUndefined";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

ExitClass exit_class(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotTrivializable:
    case ErrorKind::NotASurface:
    case ErrorKind::NotACocycle:
    case ErrorKind::NoSolution:
    case ErrorKind::InconsistentClusters:
    case ErrorKind::PropagationConflict:
      return ExitClass::Obstruction;
    case ErrorKind::BracketAmbiguous:
    case ErrorKind::EigengapTooSmall:
    case ErrorKind::RankDeficient:
    case ErrorKind::DiameterTooLarge:
    case ErrorKind::NonUniqueArc:
      return ExitClass::NumericalGuard;
    default:
      return ExitClass::Schema;
  }
}

}  // namespace circlet
