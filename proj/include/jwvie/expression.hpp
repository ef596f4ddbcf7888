#pragma once

#include <functional>
#include <string_view>

namespace jwvie {

/// Compiled arithmetic expression in the variables t and x.
///
/// Grammar: numbers, t, x, pi, parentheses, unary minus and the binary
/// operators + - * / ^ (^ is right-associative and binds tighter than unary
/// minus on its left: -t^2 == -(t^2)). Throws DomainError on malformed input.
using Expression = std::function<double(double t, double x)>;

Expression compile_expression(std::string_view text);

}  // namespace jwvie
