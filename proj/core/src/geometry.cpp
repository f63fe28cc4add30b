#include "cmv/geometry.hpp"

#include "cmv/linalg.hpp"

namespace cmv {

namespace {

Geometry build(ManifoldSpec spec) {
  Frame frame(spec);
  StructureCoeffs brackets = structure_coeffs(frame);
  MetricFrame metric = MetricFrame::from(spec.metric);
  ConnectionTable connection = koszul_connection(frame, brackets, metric);
  CurvatureTensor curvature = curvature_tensor(connection, brackets, frame);
  curvature.nablaR = nabla_R(curvature, connection, frame);
  RicciData ric = ricci(curvature, metric);
  ContactStructure contact = assemble_contact(spec, frame, metric, brackets);
  HTensor h = h_tensor(frame, contact);
  return Geometry{std::move(spec), std::move(frame),     std::move(brackets),
                  std::move(metric), std::move(connection), std::move(curvature),
                  std::move(ric),    std::move(contact),    std::move(h)};
}

}  // namespace

Geometry Geometry::compute(ManifoldSpec spec) { return build(std::move(spec)); }

Polynomial excluded_locus(const ManifoldSpec& spec) {
  Polynomial locus(1);
  auto add = [&locus](const ScalarExpr& e) { locus = combine_locus(locus, e.denominator()); };
  for (const auto& f : spec.frame) {
    for (const auto& c : f.coord_components.c) add(c);
  }
  for (std::size_t i = 0; i < spec.dim; ++i) {
    add(spec.xi.c[i]);
    for (std::size_t j = 0; j < spec.dim; ++j) {
      add(spec.metric(i, j));
      add(spec.phi(i, j));
    }
  }
  const ScalarExpr frame_det = determinant(spec.frame_matrix());
  const ScalarExpr metric_det = determinant(spec.metric);
  locus = combine_locus(locus, frame_det.numerator());
  locus = combine_locus(locus, metric_det.numerator());
  add(frame_det);
  add(metric_det);
  return squarefree_part(locus, spec.dim);
}

}  // namespace cmv
