#pragma once

#include "cmv/frame.hpp"
#include "cmv/tensor.hpp"
#include "cmv/verdict.hpp"

#include <optional>

namespace cmv {

struct MetricFrame {
  SquareMatrix g;
  SquareMatrix g_inv;

  /// Throws SingularFrame for a degenerate metric.
  static MetricFrame from(const SquareMatrix& g);
  std::size_t dim() const { return g.size(); }
};

/// nabla_{E_i} E_j = sum_k gamma(k, i, j) E_k.
struct ConnectionTable {
  Tensor<3> gamma;

  FrameVec nabla_frame(std::size_t i, std::size_t j) const;
};

/// R(E_i, E_j) E_k = sum_l R(l, i, j, k) E_l, and
/// (nabla_{E_w} R)(E_i, E_j) E_k = sum_l nablaR(l, w, i, j, k) E_l.
struct CurvatureTensor {
  Tensor<4> R;
  std::optional<Tensor<5>> nablaR;

  std::size_t dim() const { return R.dim(); }
  /// R(X, Y) Z for frame-expressed arguments (tensorial expansion).
  FrameVec apply(const FrameVec& x, const FrameVec& y, const FrameVec& z) const;
  /// (nabla_W R)(X, Y) Z; requires nablaR.
  FrameVec apply_nabla(const FrameVec& w, const FrameVec& x, const FrameVec& y,
                       const FrameVec& z) const;
};

struct RicciData {
  SquareMatrix S;  // S(E_i, E_j)
  SquareMatrix Q;  // Q E_j = sum_i Q(i, j) E_i
  ScalarExpr r;
};

ConnectionTable koszul_connection(const Frame& frame, const StructureCoeffs& c,
                                  const MetricFrame& metric);

/// nabla_X Y, tensorial in X and Leibniz in Y.
FrameVec covariant_derivative(const FrameVec& x, const FrameVec& y, const ConnectionTable& conn,
                              const Frame& frame);

/// Curvature with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
CurvatureTensor curvature_tensor(const ConnectionTable& conn, const StructureCoeffs& c,
                                 const Frame& frame);

/// S(X, Y) = trace of V -> R(V, X) Y; Q = g^-1 S; r = trace Q.
RicciData ricci(const CurvatureTensor& curv, const MetricFrame& metric);

/// Covariant derivative of the curvature, all four correction terms.
Tensor<5> nabla_R(const CurvatureTensor& curv, const ConnectionTable& conn, const Frame& frame);

Verdict check_flat(const CurvatureTensor& curv);

struct ConstantCurvatureResult {
  Verdict verdict;
  /// Fitted under R(X,Y)Z = lambda (g(Y,Z) X - g(X,Z) Y).
  std::optional<ScalarExpr> lambda;
};
ConstantCurvatureResult check_constant_curvature(const CurvatureTensor& curv,
                                                 const MetricFrame& metric);

/// Requires nablaR.
Verdict check_locally_symmetric(const CurvatureTensor& curv);

/// The dimension-3 Ricci decomposition of R. Throws DimensionError otherwise.
Verdict check_3d_decomposition(const CurvatureTensor& curv, const RicciData& ricci,
                               const MetricFrame& metric);

// Engine self-tests. Each returns the first failing component as a witness.
Verdict check_jacobi(const StructureCoeffs& c, const Frame& frame);
Verdict check_metric_compatibility(const ConnectionTable& conn, const MetricFrame& metric,
                                   const Frame& frame);
Verdict check_torsion_free(const ConnectionTable& conn, const StructureCoeffs& c);
Verdict check_curvature_antisymmetry(const CurvatureTensor& curv);
Verdict check_first_bianchi(const CurvatureTensor& curv);
Verdict check_lowered_symmetries(const CurvatureTensor& curv, const MetricFrame& metric);
Verdict check_second_bianchi(const CurvatureTensor& curv);

}  // namespace cmv
