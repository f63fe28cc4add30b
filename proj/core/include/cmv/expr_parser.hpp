#pragma once

#include "cmv/scalar_expr.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmv {

/// Parses the scalar expression grammar: integer literals, coordinate names,
/// unary minus, + - * /, ^ with a nonnegative integer exponent, parentheses,
/// and (trig extension only) sin(coord) / cos(coord). Errors carry a 1-based
/// column.
ScalarExpr parse_scalar(std::string_view text, const Chart& chart, bool allow_trig = false);

/// Parses a scalar-weighted sum of basis symbols such as "-E1" or
/// "2*E1 + x*E3". A literal 0 is the zero vector. Returns one coefficient per
/// basis symbol.
std::vector<ScalarExpr> parse_linear_combination(std::string_view text, const Chart& chart,
                                                 std::span<const std::string> basis,
                                                 bool allow_trig = false);

}  // namespace cmv
