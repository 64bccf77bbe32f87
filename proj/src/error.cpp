#include "hcstar/error.hpp"

namespace hcstar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidCategory: return "InvalidCategory";
    case ErrorKind::InvalidInvolution: return "InvalidInvolution";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::MissingInvolution: return "MissingInvolution";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidBase: return "InvalidBase";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::NonStarRepresentation: return "NonStarRepresentation";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::NotSubalgebra: return "NotSubalgebra";
    case ErrorKind::NotStarHomomorphism: return "NotStarHomomorphism";
    case ErrorKind::NotConditionalExpectation: return "NotConditionalExpectation";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
  }
  return "Unknown";
}

}  // namespace hcstar
