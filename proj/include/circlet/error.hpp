#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace circlet {

enum class ErrorKind {
  ReflectionHasNoLog,
  NonUniqueArc,
  DiameterTooLarge,
  EmptyOverlap,
  IndexOutOfRange,
  DegreeUnsupported,
  ShapeMismatch,
  NoSolution,
  NotACocycle,
  TooFewSamples,
  BracketAmbiguous,
  NotASurface,
  InconsistentClusters,
  PropagationConflict,
  UncoveredPoint,
  EigengapTooSmall,
  RankDeficient,
  NotTrivializable,
  SectionUndefined,
  LiftUndefined,
  NotACover,
  UnsupportedBase,
  SchemaViolation,
};

const char* to_string(ErrorKind kind);

// How a failure is reported by the command-line tool.
enum class ExitClass { Schema = 1, Obstruction = 2, NumericalGuard = 3 };

ExitClass exit_class(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by shortest_enclosing_arc when the maximal gap is not unique.
class NonUniqueArcError : public Error {
 public:
  NonUniqueArcError(std::vector<double> midpoints)
      : Error(ErrorKind::NonUniqueArc, "maximal circular gap is tied"),
        midpoints_(std::move(midpoints)) {}

  const std::vector<double>& midpoints() const { return midpoints_; }

 private:
  std::vector<double> midpoints_;
};

// A successful computation whose answer is "this bundle is not trivial".
class NotTrivializableError : public Error {
 public:
  explicit NotTrivializableError(std::string obstruction)
      : Error(ErrorKind::NotTrivializable, "obstructed by " + obstruction + " class"),
        obstruction_(std::move(obstruction)) {}

  // "sw" or "euler".
  const std::string& obstruction() const { return obstruction_; }

 private:
  std::string obstruction_;
};

}  // namespace circlet
