#pragma once

#include "cmv/tensor.hpp"

#include <vector>

namespace cmv {

/// Determinant by fraction-free (Bareiss) elimination.
ScalarExpr determinant(const SquareMatrix& a);

/// Solves a x = b exactly. Pivots on the first nonzero entry of each column.
/// Throws SingularFrame when no pivot exists.
std::vector<ScalarExpr> solve(const SquareMatrix& a, const std::vector<ScalarExpr>& b);

/// Exact inverse; throws SingularFrame.
SquareMatrix inverse(const SquareMatrix& a);

}  // namespace cmv
