#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthograph {

enum class ErrorKind {
  ShapeMismatch,
  ZeroElement,
  NotPositive,
  NotProjection,
  NotNormalized,
  NotMinimal,
  PositionOutOfRange,
  InfeasibleRank,
  InvalidElement,
  SmallAlgebra,
  Isolated,
  RightInvertibleEndpoint,
  VerificationFailed,
  SplitInfeasible,
  ParseError,
  ConfigError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto its exit-code table.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orthograph
