#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcstar {

enum class ErrorKind {
  NotInAlgebra,
  DimensionMismatch,
  InvalidAlgebra,
  InvalidState,
  InvalidCategory,
  InvalidInvolution,
  NotComposable,
  PreconditionViolated,
  BaseMismatch,
  MissingInvolution,
  ShapeMismatch,
  InvalidBase,
  NonAssociative,
  NonStarRepresentation,
  NotSeparating,
  NotSubalgebra,
  NotStarHomomorphism,
  NotConditionalExpectation,
  AlgebraMismatch,
  ParseError,
  UnresolvedReference,
  UnknownCommand,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the toolkit carries a machine-readable kind so the
/// CLI can serialize it into a report.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hcstar
