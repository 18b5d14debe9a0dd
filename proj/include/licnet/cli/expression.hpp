#pragma once

#include <optional>
#include <string_view>

namespace licnet::cli {

// Evaluates an arithmetic expression over numeric literals and the variable
// $alpha with + - * /, unary minus and parentheses. Throws SyntaxError with
// the 1-based column, or ValidationError if $alpha is used but not bound.
double evaluate_expression(std::string_view text, std::optional<double> alpha);

// Whether the text mentions $alpha.
bool uses_alpha(std::string_view text);

}  // namespace licnet::cli
