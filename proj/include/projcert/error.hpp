#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projcert {

enum class ErrorCode {
  ZeroVector,
  InvalidInput,
  DegenerateJoin,
  DegenerateMeet,
  SingularTransform,
  RankOne,
  SingularConic,
  PointNotOnConic,
  NotDegenerate,
  DegeneratePointSet,
  TangentLineThroughBasePoint,
  ContactPointOffLine,
  InconsistentThroughPoint,
  LineOnConic,
  SharedComponent,
  NotACircle,
  CenterOnLine,
  IsCircle,
  FocusInput,
  ParallelLines,
  ParallelTangents,
  CoincidentPoints,
  NotTangent,
  DegenerateQuadrilateral,
  NoSecondTangent,
  DegeneratePairing,
  FewerThanNineIntersections,
  CoincidentIntersections,
  DegenerateBlueConic,
  RankDeficientInput,
  SamplingExhausted,
  UnknownTheorem,
  NothingRealToDraw,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type; `code()` is
/// stable and is what tests and the harness dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace projcert
