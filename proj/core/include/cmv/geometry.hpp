#pragma once

#include "cmv/contact.hpp"
#include "cmv/frame.hpp"
#include "cmv/manifold_spec.hpp"
#include "cmv/riemann.hpp"

namespace cmv {

/// Every table derived from a spec, computed once in dependency order:
/// brackets, connection, curvature, its covariant derivative, Ricci data and
/// the contact tensors.
struct Geometry {
  ManifoldSpec spec;
  Frame frame;
  StructureCoeffs brackets;
  MetricFrame metric;
  ConnectionTable connection;
  CurvatureTensor curvature;
  RicciData ricci;
  ContactStructure contact;
  HTensor h;

  static Geometry compute(ManifoldSpec spec);

  std::size_t dim() const { return spec.dim; }
};

/// Least common multiple of every denominator in the spec data together with
/// the frame and metric determinants; square-free when trig-free.
Polynomial excluded_locus(const ManifoldSpec& spec);

}  // namespace cmv
