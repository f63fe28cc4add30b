#pragma once

#include "cmv/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cmv {

struct SamplePoint {
  ExactPoint exact;
  std::vector<double> coords;
};

struct SamplingOptions {
  /// Points are a + b/denominator with a in [-box, box).
  int box = 5;
  int denominator = 8;
  /// Rejections tolerated before SamplingExhausted.
  std::size_t max_rejections = 2000;
};

/// Deterministic rejection sampling: keeps points off the excluded locus where
/// the metric is positive definite. Throws SamplingExhausted. The number of
/// rejected draws is stored in `rejections` when given.
std::vector<SamplePoint> sample_points(const ManifoldSpec& spec, std::size_t n, std::uint64_t seed,
                                       const SamplingOptions& options = {},
                                       std::size_t* rejections = nullptr);

/// Frame connection gamma(k, i, j) at one point from central differences of
/// the coordinate metric and the frame; uses only the spec data. Arithmetic is
/// exact for trig-free specs, so the deviation is pure truncation error.
Tensor<3, double> fd_connection(const ManifoldSpec& spec, const SamplePoint& p, double step);

/// Frame curvature R(l, i, j, k) at one point by nested central differences
/// of the coordinate Christoffel symbols.
Tensor<4, double> fd_curvature(const ManifoldSpec& spec, const SamplePoint& p, double step);

struct NumericReport {
  std::string tensor;
  double max_abs_dev = 0;
  /// |symbolic - numeric| / max(1, |symbolic|).
  double max_rel_dev = 0;
  std::size_t points = 0;
  double step = 0;
  double tolerance = 0;
  bool pass = true;
  /// 1-based frame indices of the worst component.
  std::vector<std::size_t> worst_component;
  std::size_t worst_point = 0;
};

NumericReport cross_validate_connection(const ManifoldSpec& spec, const ConnectionTable& conn,
                                        const std::vector<SamplePoint>& points, double step,
                                        double tol);

NumericReport cross_validate_curvature(const ManifoldSpec& spec, const CurvatureTensor& curv,
                                       const std::vector<SamplePoint>& points, double step,
                                       double tol);

/// Residual mode for algebraic identities: every residual should evaluate to
/// zero. Component indices are positions in `residuals` (1-based).
NumericReport cross_validate_identity(const std::string& name,
                                      const std::vector<ScalarExpr>& residuals,
                                      const std::vector<SamplePoint>& points, double tol);

}  // namespace cmv
