#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace licnet {

enum class ErrorCode {
  NegativeEntry,
  SumNotOne,
  DimensionMismatch,
  SupportMismatch,
  InvalidPerturbation,
  ZeroProbabilitySymbol,
  NumericalFailure,
  SolverDidNotConverge,
  Infeasible,
  Unbounded,
  InvalidGrid,
  EmptyList,
  DeadLinkInMode,
  UnrepairableZeroPattern,
  InvalidSymmetricParameters,
  InvalidArgument,
  SyntaxError,
  SchemaError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace licnet
