#include "cmv/linalg.hpp"

#include "cmv/errors.hpp"

#include <utility>

namespace cmv {

namespace {

// Bareiss forward elimination on rows of width cols (n pivot columns).
// Returns false when a pivot column is entirely zero. Tracks the row-swap sign.
bool bareiss(std::vector<std::vector<ScalarExpr>>& m, std::size_t n, int& sign) {
  ScalarExpr prev(1);
  sign = 1;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return false;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = ScalarExpr();
    }
    prev = m[k][k];
  }
  return true;
}

std::vector<std::vector<ScalarExpr>> rows_of(const SquareMatrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<ScalarExpr>> m(n, std::vector<ScalarExpr>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = a(r, c);
  }
  return m;
}

}  // namespace

ScalarExpr determinant(const SquareMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return ScalarExpr(1);
  auto m = rows_of(a);
  int sign = 1;
  if (!bareiss(m, n, sign)) return ScalarExpr();
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::vector<ScalarExpr> solve(const SquareMatrix& a, const std::vector<ScalarExpr>& b) {
  const std::size_t n = a.size();
  auto m = rows_of(a);
  for (std::size_t r = 0; r < n; ++r) m[r].push_back(b[r]);
  int sign = 1;
  if (!bareiss(m, n, sign)) throw SingularFrame("matrix is singular: no pivot available");
  std::vector<ScalarExpr> x(n);
  for (std::size_t i = n; i-- > 0;) {
    ScalarExpr acc = m[i][n];
    for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
    x[i] = acc / m[i][i];
  }
  return x;
}

SquareMatrix inverse(const SquareMatrix& a) {
  const std::size_t n = a.size();
  SquareMatrix inv(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<ScalarExpr> e(n);
    e[c] = ScalarExpr(1);
    const auto col = solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

}  // namespace cmv
