#include "licnet/error.hpp"

namespace licnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::InvalidPerturbation: return "InvalidPerturbation";
    case ErrorCode::ZeroProbabilitySymbol: return "ZeroProbabilitySymbol";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::SolverDidNotConverge: return "SolverDidNotConverge";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::DeadLinkInMode: return "DeadLinkInMode";
    case ErrorCode::UnrepairableZeroPattern: return "UnrepairableZeroPattern";
    case ErrorCode::InvalidSymmetricParameters: return "InvalidSymmetricParameters";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace licnet
