#pragma once

#include "cmv/manifold_spec.hpp"
#include "cmv/tensor.hpp"

#include <vector>

namespace cmv {

/// X(f) = sum_i X^i df/dx_i.
ScalarExpr vf_apply(const CoordVec& x, const ScalarExpr& f);

/// [X, Y]^i = X(Y^i) - Y(X^i).
CoordVec lie_bracket(const CoordVec& x, const CoordVec& y);

/// Frame components of v by exact elimination on the transposed frame matrix
/// (rows of frame_matrix are the fields). Throws SingularFrame.
FrameVec to_frame_components(const CoordVec& v, const SquareMatrix& frame_matrix);

/// [E_i, E_j] = sum_k c(k, i, j) E_k.
using StructureCoeffs = Tensor<3>;

/// A global frame with its cached change of basis.
class Frame {
 public:
  /// Throws SingularFrame.
  explicit Frame(const ManifoldSpec& spec);
  explicit Frame(std::vector<CoordVec> fields);

  std::size_t dim() const { return fields_.size(); }
  const CoordVec& field(std::size_t i) const { return fields_[i]; }
  const SquareMatrix& matrix() const { return matrix_; }
  /// inverse()(i, a): coefficient of E_a in d/dx_i.
  const SquareMatrix& inverse() const { return inverse_; }

  /// E_i(f).
  ScalarExpr derivative(std::size_t i, const ScalarExpr& f) const;
  /// X(f) for X given on the frame.
  ScalarExpr apply(const FrameVec& x, const ScalarExpr& f) const;

  FrameVec to_frame(const CoordVec& v) const;
  CoordVec to_coords(const FrameVec& v) const;

  /// Bracket of frame-expressed fields, returned on the frame.
  FrameVec bracket(const FrameVec& x, const FrameVec& y) const;

 private:
  std::vector<CoordVec> fields_;
  SquareMatrix matrix_;
  SquareMatrix inverse_;
};

StructureCoeffs structure_coeffs(const Frame& frame);

}  // namespace cmv
