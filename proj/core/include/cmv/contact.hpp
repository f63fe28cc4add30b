#pragma once

#include "cmv/frame.hpp"
#include "cmv/manifold_spec.hpp"
#include "cmv/riemann.hpp"
#include "cmv/verdict.hpp"

#include <optional>
#include <vector>

namespace cmv {

/// eta, xi, phi and d eta on the frame.
struct ContactStructure {
  std::vector<ScalarExpr> eta;  // eta(E_i)
  FrameVec xi;
  SquareMatrix phi;
  SquareMatrix deta;  // d eta(E_i, E_j) under `convention`
  DetaConvention convention = DetaConvention::Half;

  std::size_t dim() const { return eta.size(); }
  ScalarExpr eta_of(const FrameVec& v) const;
  /// phi^2 as a matrix.
  SquareMatrix phi_squared() const { return phi * phi; }
  /// c with d eta_half(X, Y) = c g(X, phi Y) once the compatibility axiom
  /// holds: 1 for the half convention, 1/2 for the full one.
  ScalarExpr scale() const {
    return convention == DetaConvention::Half ? ScalarExpr(1) : ScalarExpr(mpq_class(1, 2));
  }
};

/// h E_j = sum_i h(i, j) E_i.
struct HTensor {
  SquareMatrix h;
};

/// eta(E_i) = g(E_i, xi).
std::vector<ScalarExpr> eta_from_metric(const FrameVec& xi, const MetricFrame& metric);

/// d eta on frame pairs. Half: d eta(X,Y) = 1/2 (X eta(Y) - Y eta(X) - eta([X,Y])).
SquareMatrix d_eta(const Frame& frame, const std::vector<ScalarExpr>& eta,
                   const StructureCoeffs& c, DetaConvention convention);

ContactStructure assemble_contact(const ManifoldSpec& spec, const Frame& frame,
                                  const MetricFrame& metric, const StructureCoeffs& c);

struct ContactConditionResult {
  Verdict verdict;
  /// eta ^ (d eta)^n evaluated on (E_1, ..., E_{2n+1}), normalized so that
  /// the Darboux form dz - y dx on R^3 gives 1 with the full convention.
  ScalarExpr value;
};
ContactConditionResult contact_condition(const ContactStructure& cs);

/// h = 1/2 Lie_xi phi, (Lie_xi phi) X = [xi, phi X] - phi [xi, X].
HTensor h_tensor(const Frame& frame, const ContactStructure& cs);

struct BatteryOptions {
  /// Also check the second-order identity relating (nabla_{hX} phi) to R.
  bool long_identity = false;
};

std::vector<NamedVerdict> axiom_battery(const Frame& frame, const MetricFrame& metric,
                                        const ContactStructure& cs, const HTensor& h,
                                        const ConnectionTable& conn,
                                        const CurvatureTensor& curv,
                                        const BatteryOptions& options = {});

/// The second-order h identity alone (also used by the battery).
Verdict long_identity_check(const Frame& frame, const MetricFrame& metric,
                            const ContactStructure& cs, const HTensor& h,
                            const ConnectionTable& conn, const CurvatureTensor& curv);

enum class NullityReason { None, NoScalarFits, ScalarNotConstant };

struct NullityResult {
  Status status = Status::Refuted;  // Fits or Refuted
  std::optional<ScalarExpr> k;
  std::optional<Witness> witness;
  NullityReason reason = NullityReason::None;
  /// Consistency checks run when k fits: S(X, xi) = 2nk eta(X) and, in
  /// dimension 3, Q = (r/2 - k) I + (3k - r/2) eta (x) xi.
  std::optional<bool> ricci_xi_holds;
  std::optional<bool> ricci_operator_holds;
  std::vector<std::string> notes;
};

NullityResult nullity_classify(const CurvatureTensor& curv, const ContactStructure& cs,
                               const MetricFrame& metric,
                               const RicciData* ricci = nullptr);

/// Evaluates a nullity constant asserted for the instance.
struct ClaimedNullity {
  bool constant = false;
  bool satisfies = false;
  std::optional<Witness> witness;
};
ClaimedNullity check_claimed_k(const CurvatureTensor& curv, const ContactStructure& cs,
                               const ScalarExpr& k);

/// R(X, Y)xi = c^2 (eta(Y)X - eta(X)Y) with c = cs.scale().
Verdict sasakian_check(const CurvatureTensor& curv, const ContactStructure& cs);

/// [phi, phi] + 2 d eta (x) xi = 0 with d eta in the half convention.
Verdict nijenhuis_check(const Frame& frame, const ContactStructure& cs);

/// phi^2 ((nabla_W R)(X, Y) Z) = 0 on horizontal projections of frame fields.
Verdict phi_symmetric_check(const CurvatureTensor& curv, const ContactStructure& cs);

enum class RecurrenceStatus { Recurrent, Trivial, ZeroOnly, Refuted };

struct RecurrenceSolution {
  RecurrenceStatus status = RecurrenceStatus::Refuted;
  /// A(E_w) when the relation is satisfied (recurrent or zero-only).
  std::vector<ScalarExpr> A;
  std::optional<Witness> witness;
  std::vector<std::string> notes;
};

RecurrenceSolution phi_recurrence_solve(const CurvatureTensor& curv, const ContactStructure& cs);

/// (nabla_{E_w} eta)(E_z) = E_w(eta(E_z)) - eta(nabla_{E_w} E_z).
ScalarExpr nabla_eta(const Frame& frame, const ConnectionTable& conn, const ContactStructure& cs,
                     std::size_t w, std::size_t z);
/// (nabla_W eta)(Z) for arbitrary frame-expressed arguments.
ScalarExpr nabla_eta(const Frame& frame, const ConnectionTable& conn, const ContactStructure& cs,
                     const FrameVec& w, const FrameVec& z);

std::string_view recurrence_status_name(RecurrenceStatus s);
std::string_view nullity_reason_name(NullityReason r);

}  // namespace cmv
