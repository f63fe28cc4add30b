#include "cmv/frame.hpp"

#include "cmv/errors.hpp"
#include "cmv/linalg.hpp"

namespace cmv {

ScalarExpr vf_apply(const CoordVec& x, const ScalarExpr& f) {
  ScalarExpr out;
  if (f.is_constant()) return out;
  for (std::size_t i = 0; i < x.c.size(); ++i) {
    if (!x.c[i].is_zero()) out += x.c[i] * f.diff(i);
  }
  return out;
}

CoordVec lie_bracket(const CoordVec& x, const CoordVec& y) {
  CoordVec out{std::vector<ScalarExpr>(x.c.size())};
  for (std::size_t i = 0; i < x.c.size(); ++i) out.c[i] = vf_apply(x, y.c[i]) - vf_apply(y, x.c[i]);
  return out;
}

FrameVec to_frame_components(const CoordVec& v, const SquareMatrix& frame_matrix) {
  return FrameVec{solve(frame_matrix.transposed(), v.c)};
}

Frame::Frame(const ManifoldSpec& spec) : Frame([&] {
  std::vector<CoordVec> f;
  for (const auto& field : spec.frame) f.push_back(field.coord_components);
  return f;
}()) {}

Frame::Frame(std::vector<CoordVec> fields) : fields_(std::move(fields)) {
  const std::size_t n = fields_.size();
  matrix_ = SquareMatrix(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) matrix_(a, i) = fields_[a].c[i];
  }
  inverse_ = cmv::inverse(matrix_);
}

ScalarExpr Frame::derivative(std::size_t i, const ScalarExpr& f) const {
  return vf_apply(fields_[i], f);
}

ScalarExpr Frame::apply(const FrameVec& x, const ScalarExpr& f) const {
  ScalarExpr out;
  if (f.is_constant()) return out;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (!x.c[a].is_zero()) out += x.c[a] * derivative(a, f);
  }
  return out;
}

FrameVec Frame::to_frame(const CoordVec& v) const {
  // v = sum_i v^i d/dx_i and d/dx_i = sum_a inverse(i, a) E_a.
  FrameVec out = FrameVec::zero(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (v.c[i].is_zero()) continue;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (!inverse_(i, a).is_zero()) out.c[a] += v.c[i] * inverse_(i, a);
    }
  }
  return out;
}

CoordVec Frame::to_coords(const FrameVec& v) const {
  CoordVec out{std::vector<ScalarExpr>(dim())};
  for (std::size_t a = 0; a < dim(); ++a) {
    if (v.c[a].is_zero()) continue;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!matrix_(a, i).is_zero()) out.c[i] += v.c[a] * matrix_(a, i);
    }
  }
  return out;
}

FrameVec Frame::bracket(const FrameVec& x, const FrameVec& y) const {
  return to_frame(lie_bracket(to_coords(x), to_coords(y)));
}

StructureCoeffs structure_coeffs(const Frame& frame) {
  const std::size_t n = frame.dim();
  StructureCoeffs c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FrameVec b = frame.to_frame(lie_bracket(frame.field(i), frame.field(j)));
      for (std::size_t k = 0; k < n; ++k) {
        c(k, i, j) = b.c[k];
        c(k, j, i) = -b.c[k];
      }
    }
  }
  return c;
}

}  // namespace cmv
