#include "cmv/contact.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace cmv {

namespace {

ScalarExpr delta(std::size_t a, std::size_t b) { return a == b ? ScalarExpr(1) : ScalarExpr(); }

template <std::size_t N>
Witness make_witness(const std::array<std::size_t, N>& idx, ScalarExpr value, std::string pattern) {
  Witness w;
  for (std::size_t i : idx) w.indices.push_back(i + 1);
  w.value = std::move(value);
  w.pattern = std::move(pattern);
  return w;
}

template <std::size_t N, class F>
Verdict scan(std::size_t dim, const std::string& pattern, F&& residual) {
  Tensor<N> shape(dim);
  for (std::size_t pos = 0; pos < shape.size(); ++pos) {
    const auto idx = shape.unflatten(pos);
    ScalarExpr r = residual(idx);
    if (!r.is_zero()) return Verdict::refuted(make_witness(idx, std::move(r), pattern));
  }
  return Verdict::pass();
}

ScalarExpr half(const ScalarExpr& e) { return e / ScalarExpr(2); }

// R(E_i, E_j) xi along E_l.
ScalarExpr curvature_on_xi(const CurvatureTensor& curv, const ContactStructure& cs, std::size_t l,
                           std::size_t i, std::size_t j) {
  ScalarExpr s;
  for (std::size_t k = 0; k < cs.dim(); ++k) {
    if (!cs.xi.c[k].is_zero() && !curv.R(l, i, j, k).is_zero()) s += cs.xi.c[k] * curv.R(l, i, j, k);
  }
  return s;
}

// eta(Y) X - eta(X) Y for (X, Y) = (E_i, E_j), along E_l.
ScalarExpr nullity_model(const ContactStructure& cs, std::size_t l, std::size_t i, std::size_t j) {
  return cs.eta[j] * delta(l, i) - cs.eta[i] * delta(l, j);
}

int permutation_sign(const std::vector<std::size_t>& p) {
  int sign = 1;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      if (p[a] > p[b]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

ScalarExpr ContactStructure::eta_of(const FrameVec& v) const {
  ScalarExpr s;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!eta[i].is_zero() && !v.c[i].is_zero()) s += eta[i] * v.c[i];
  }
  return s;
}

std::vector<ScalarExpr> eta_from_metric(const FrameVec& xi, const MetricFrame& metric) {
  const std::size_t n = metric.dim();
  std::vector<ScalarExpr> eta(n);
  for (std::size_t i = 0; i < n; ++i) eta[i] = metric.g.form(FrameVec::unit(n, i), xi);
  return eta;
}

SquareMatrix d_eta(const Frame& frame, const std::vector<ScalarExpr>& eta, const StructureCoeffs& c,
                   DetaConvention convention) {
  const std::size_t n = frame.dim();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ScalarExpr s = frame.derivative(i, eta[j]) - frame.derivative(j, eta[i]);
      for (std::size_t m = 0; m < n; ++m) {
        if (!c(m, i, j).is_zero()) s -= c(m, i, j) * eta[m];
      }
      if (convention == DetaConvention::Half) s = half(s);
      d(j, i) = -s;
      d(i, j) = std::move(s);
    }
  }
  return d;
}

ContactStructure assemble_contact(const ManifoldSpec& spec, const Frame& frame,
                                  const MetricFrame& metric, const StructureCoeffs& c) {
  ContactStructure cs;
  cs.xi = spec.xi;
  cs.phi = spec.phi;
  cs.convention = spec.deta;
  cs.eta = eta_from_metric(spec.xi, metric);
  cs.deta = d_eta(frame, cs.eta, c, spec.deta);
  return cs;
}

ContactConditionResult contact_condition(const ContactStructure& cs) {
  const std::size_t dim = cs.dim();
  const std::size_t n = (dim - 1) / 2;
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  ScalarExpr sum;
  do {
    if (cs.eta[perm[0]].is_zero()) continue;
    ScalarExpr term = cs.eta[perm[0]];
    for (std::size_t t = 0; t < n && !term.is_zero(); ++t) {
      term *= cs.deta(perm[1 + 2 * t], perm[2 + 2 * t]);
    }
    if (term.is_zero()) continue;
    if (permutation_sign(perm) > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  long norm = 1;
  for (std::size_t t = 1; t <= n; ++t) norm *= 2 * static_cast<long>(t);  // 2^n n!
  ContactConditionResult out;
  out.value = sum / ScalarExpr(norm);
  if (out.value.is_zero()) {
    Witness w;
    for (std::size_t i = 1; i <= dim; ++i) w.indices.push_back(i);
    w.value = out.value;
    w.pattern = "eta ^ (d eta)^n vanishes identically";
    out.verdict = Verdict::refuted(std::move(w));
  }
  return out;
}

HTensor h_tensor(const Frame& frame, const ContactStructure& cs) {
  const std::size_t n = cs.dim();
  HTensor out{SquareMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const FrameVec lie = frame.bracket(cs.xi, cs.phi.column(j)) -
                         cs.phi.apply(frame.bracket(cs.xi, FrameVec::unit(n, j)));
    for (std::size_t i = 0; i < n; ++i) out.h(i, j) = half(lie.c[i]);
  }
  return out;
}

ScalarExpr nabla_eta(const Frame& frame, const ConnectionTable& conn, const ContactStructure& cs,
                     std::size_t w, std::size_t z) {
  ScalarExpr s = frame.derivative(w, cs.eta[z]);
  for (std::size_t m = 0; m < cs.dim(); ++m) {
    if (!conn.gamma(m, w, z).is_zero() && !cs.eta[m].is_zero()) s -= conn.gamma(m, w, z) * cs.eta[m];
  }
  return s;
}

ScalarExpr nabla_eta(const Frame& frame, const ConnectionTable& conn, const ContactStructure& cs,
                     const FrameVec& w, const FrameVec& z) {
  return frame.apply(w, cs.eta_of(z)) - cs.eta_of(covariant_derivative(w, z, conn, frame));
}

Verdict long_identity_check(const Frame& frame, const MetricFrame& metric,
                            const ContactStructure& cs, const HTensor& h,
                            const ConnectionTable& conn, const CurvatureTensor& curv) {
  const std::size_t n = cs.dim();
  const SquareMatrix& phi = cs.phi;
  return scan<2>(n, "2 (nabla_{h%1} phi)%2 identity, first failing component", [&](const auto& t) {
    const FrameVec x = FrameVec::unit(n, t[0]);
    const FrameVec y = FrameVec::unit(n, t[1]);
    const FrameVec hx = h.h.column(t[0]);
    const FrameVec phix = phi.column(t[0]);
    const FrameVec phiy = phi.column(t[1]);
    // (nabla_Z phi) Y = nabla_Z (phi Y) - phi nabla_Z Y.
    const FrameVec lhs = ScalarExpr(2) * (covariant_derivative(hx, phiy, conn, frame) -
                                          phi.apply(covariant_derivative(hx, y, conn, frame)));
    const FrameVec x_plus_hx = x + hx;
    FrameVec rhs = FrameVec::zero(n) - curv.apply(cs.xi, x, y);
    rhs -= phi.apply(curv.apply(cs.xi, x, phiy));
    rhs += phi.apply(curv.apply(cs.xi, phix, y));
    rhs -= curv.apply(cs.xi, phix, phiy);
    rhs += (ScalarExpr(2) * metric.g.form(x_plus_hx, y)) * cs.xi;
    rhs -= (ScalarExpr(2) * cs.eta[t[1]]) * x_plus_hx;
    const FrameVec diff = lhs - rhs;
    for (const auto& comp : diff.c) {
      if (!comp.is_zero()) return comp;
    }
    return ScalarExpr();
  });
}

std::vector<NamedVerdict> axiom_battery(const Frame& frame, const MetricFrame& metric,
                                        const ContactStructure& cs, const HTensor& h,
                                        const ConnectionTable& conn, const CurvatureTensor& curv,
                                        const BatteryOptions& options) {
  const std::size_t n = cs.dim();
  const SquareMatrix& g = metric.g;
  const SquareMatrix& phi = cs.phi;
  const SquareMatrix phi2 = cs.phi_squared();
  std::vector<NamedVerdict> out;

  {
    const ScalarExpr r = cs.eta_of(cs.xi) - ScalarExpr(1);
    Verdict v;
    if (!r.is_zero()) {
      Witness w;
      w.value = r;
      w.pattern = "eta(xi) - 1";
      v = Verdict::refuted(std::move(w));
    }
    out.push_back({"eta-xi", v});
  }
  out.push_back({"phi-squared", scan<2>(n, "phi^2 %1 + %1 - eta(%1) xi, along %2", [&](const auto& t) {
                   const std::size_t j = t[0], i = t[1];
                   return phi2(i, j) + delta(i, j) - cs.xi.c[i] * cs.eta[j];
                 })});
  const FrameVec phi_xi = phi.apply(cs.xi);
  out.push_back({"phi-xi", scan<1>(n, "phi xi along %1", [&](const auto& t) { return phi_xi.c[t[0]]; })});
  out.push_back({"eta-phi", scan<1>(n, "eta(phi %1)", [&](const auto& t) {
                   return cs.eta_of(phi.column(t[0]));
                 })});
  out.push_back({"phi-metric", scan<2>(n, "g(phi %1, phi %2) - g(%1,%2) + eta(%1) eta(%2)",
                                       [&](const auto& t) {
                                         const std::size_t i = t[0], j = t[1];
                                         return g.form(phi.column(i), phi.column(j)) - g(i, j) +
                                                cs.eta[i] * cs.eta[j];
                                       })});
  out.push_back({"deta-compat", scan<2>(n, "d eta(%1,%2) - g(%1, phi %2)", [&](const auto& t) {
                   const std::size_t i = t[0], j = t[1];
                   return cs.deta(i, j) - g.form(FrameVec::unit(n, i), phi.column(j));
                 })});
  const FrameVec h_xi = h.h.apply(cs.xi);
  out.push_back({"h-xi", scan<1>(n, "h xi along %1", [&](const auto& t) { return h_xi.c[t[0]]; })});
  out.push_back({"h-symmetric", scan<2>(n, "g(h %1, %2) - g(%1, h %2)", [&](const auto& t) {
                   const std::size_t i = t[0], j = t[1];
                   return g.form(h.h.column(i), FrameVec::unit(n, j)) -
                          g.form(FrameVec::unit(n, i), h.h.column(j));
                 })});
  const SquareMatrix anti = h.h * phi;
  const SquareMatrix anti2 = phi * h.h;
  out.push_back({"h-anticommute", scan<2>(n, "(h phi + phi h) %1 along %2", [&](const auto& t) {
                   return anti(t[1], t[0]) + anti2(t[1], t[0]);
                 })});
  const SquareMatrix phih = phi * h.h;
  const ScalarExpr c = cs.scale();
  out.push_back({"nabla-xi", scan<2>(n, "nabla_%1 xi + c phi %1 + phi h %1, along %2", [&](const auto& t) {
                   const std::size_t i = t[0], l = t[1];
                   const FrameVec nx = covariant_derivative(FrameVec::unit(n, i), cs.xi, conn, frame);
                   return nx.c[l] + c * phi(l, i) + phih(l, i);
                 })});
  out.push_back({"nabla-eta-xi", scan<1>(n, "(nabla_%1 eta)(xi)", [&](const auto& t) {
                   return nabla_eta(frame, conn, cs, FrameVec::unit(n, t[0]), cs.xi);
                 })});
  if (options.long_identity) {
    out.push_back({"long-identity", long_identity_check(frame, metric, cs, h, conn, curv)});
  }
  return out;
}

NullityResult nullity_classify(const CurvatureTensor& curv, const ContactStructure& cs,
                               const MetricFrame& /*metric*/, const RicciData* ric) {
  const std::size_t n = cs.dim();
  NullityResult out;
  Tensor<3> shape(n);
  std::optional<ScalarExpr> k;
  for (std::size_t pos = 0; pos < shape.size() && !k; ++pos) {
    const auto t = shape.unflatten(pos);
    const ScalarExpr m = nullity_model(cs, t[2], t[0], t[1]);
    if (!m.is_zero()) k = curvature_on_xi(curv, cs, t[2], t[0], t[1]) / m;
  }
  if (!k) k = ScalarExpr();  // eta vanishes identically: only R(X,Y)xi = 0 can fit

  const Verdict residual =
      scan<3>(n, "R(%1,%2)xi - k[eta(%2)%1 - eta(%1)%2], along %3", [&](const auto& t) {
        return curvature_on_xi(curv, cs, t[2], t[0], t[1]) - *k * nullity_model(cs, t[2], t[0], t[1]);
      });
  if (!residual.holds()) {
    out.status = Status::Refuted;
    out.reason = NullityReason::NoScalarFits;
    out.witness = residual.witness;
    out.notes.push_back("no single scalar k satisfies R(X,Y)xi = k[eta(Y)X - eta(X)Y]");
    return out;
  }
  if (!k->is_coordinate_free(n)) {
    out.status = Status::Refuted;
    out.reason = NullityReason::ScalarNotConstant;
    Witness w;
    w.value = *k;
    w.pattern = "k is not constant";
    out.witness = std::move(w);
    out.notes.push_back("the only fitting scalar is not constant");
    return out;
  }
  out.status = Status::Fits;
  out.k = k;

  if (ric != nullptr) {
    const std::size_t half_dim = (n - 1) / 2;
    const ScalarExpr two_nk = ScalarExpr(static_cast<long>(2 * half_dim)) * *k;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      ScalarExpr s = ric->S.form(FrameVec::unit(n, i), cs.xi);
      ok = (s - two_nk * cs.eta[i]).is_zero();
    }
    out.ricci_xi_holds = ok;
    if (!ok) out.notes.push_back("S(X, xi) = 2nk eta(X) fails");
    if (n == 3) {
      const ScalarExpr half_r = ric->r / ScalarExpr(2);
      bool q_ok = true;
      for (std::size_t l = 0; l < n && q_ok; ++l) {
        for (std::size_t j = 0; j < n && q_ok; ++j) {
          const ScalarExpr expected =
              (half_r - *k) * delta(l, j) + (ScalarExpr(3) * *k - half_r) * cs.eta[j] * cs.xi.c[l];
          q_ok = (ric->Q(l, j) - expected).is_zero();
        }
      }
      out.ricci_operator_holds = q_ok;
      if (!q_ok) out.notes.push_back("QX = (r/2 - k)X + (3k - r/2)eta(X)xi fails");
    }
  }
  return out;
}

ClaimedNullity check_claimed_k(const CurvatureTensor& curv, const ContactStructure& cs,
                               const ScalarExpr& k) {
  const std::size_t n = cs.dim();
  ClaimedNullity out;
  out.constant = k.is_coordinate_free(n);
  const Verdict v =
      scan<3>(n, "R(%1,%2)xi - k[eta(%2)%1 - eta(%1)%2] with the claimed k, along %3",
              [&](const auto& t) {
                return curvature_on_xi(curv, cs, t[2], t[0], t[1]) - k * nullity_model(cs, t[2], t[0], t[1]);
              });
  out.satisfies = v.holds();
  out.witness = v.witness;
  return out;
}

Verdict sasakian_check(const CurvatureTensor& curv, const ContactStructure& cs) {
  const ScalarExpr c2 = cs.scale() * cs.scale();
  return scan<3>(cs.dim(), "R(%1,%2)xi - c^2[eta(%2)%1 - eta(%1)%2], along %3", [&](const auto& t) {
    return curvature_on_xi(curv, cs, t[2], t[0], t[1]) - c2 * nullity_model(cs, t[2], t[0], t[1]);
  });
}

Verdict nijenhuis_check(const Frame& frame, const ContactStructure& cs) {
  const std::size_t n = cs.dim();
  const SquareMatrix& phi = cs.phi;
  const SquareMatrix phi2 = cs.phi_squared();
  // Blair's normalization: the d eta term uses the half convention.
  const ScalarExpr to_half = cs.convention == DetaConvention::Half ? ScalarExpr(1) : ScalarExpr(mpq_class(1, 2));
  std::vector<FrameVec> rows;
  Tensor<3> torsion(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FrameVec x = FrameVec::unit(n, i);
      const FrameVec y = FrameVec::unit(n, j);
      const FrameVec px = phi.column(i);
      const FrameVec py = phi.column(j);
      FrameVec nij = phi2.apply(frame.bracket(x, y)) + frame.bracket(px, py) -
                     phi.apply(frame.bracket(px, y)) - phi.apply(frame.bracket(x, py));
      nij += (ScalarExpr(2) * to_half * cs.deta(i, j)) * cs.xi;
      for (std::size_t l = 0; l < n; ++l) {
        torsion(l, i, j) = nij.c[l];
        torsion(l, j, i) = -nij.c[l];
      }
    }
  }
  return scan<3>(n, "([phi,phi] + 2 d eta (x) xi)(%1,%2) along %3",
                 [&](const auto& t) { return torsion(t[2], t[0], t[1]); });
}

Verdict phi_symmetric_check(const CurvatureTensor& curv, const ContactStructure& cs) {
  const std::size_t n = cs.dim();
  const SquareMatrix phi2 = cs.phi_squared();
  const Tensor<5>& nr = *curv.nablaR;
  // Horizontal projection P(a, i): coefficient of E_a in E_i - eta(E_i) xi.
  SquareMatrix proj(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) proj(a, i) = delta(a, i) - cs.xi.c[a] * cs.eta[i];
  }
  // L(l, w, i, j, k) = phi^2 applied to nablaR, then projected in slots w, i, j, k.
  Tensor<5> cur(n);
  for (std::size_t pos = 0; pos < cur.size(); ++pos) {
    const auto t = cur.unflatten(pos);
    ScalarExpr s;
    for (std::size_t m = 0; m < n; ++m) {
      if (!phi2(t[0], m).is_zero() && !nr(m, t[1], t[2], t[3], t[4]).is_zero()) {
        s += phi2(t[0], m) * nr(m, t[1], t[2], t[3], t[4]);
      }
    }
    cur.at(t) = s;
  }
  for (std::size_t slot = 1; slot < 5; ++slot) {
    Tensor<5> next(n);
    for (std::size_t pos = 0; pos < next.size(); ++pos) {
      const auto t = next.unflatten(pos);
      ScalarExpr s;
      auto src = t;
      for (std::size_t a = 0; a < n; ++a) {
        if (proj(a, t[slot]).is_zero()) continue;
        src[slot] = a;
        if (!cur.at(src).is_zero()) s += proj(a, t[slot]) * cur.at(src);
      }
      next.at(t) = s;
    }
    cur = std::move(next);
  }
  return scan<5>(n, "phi^2((nabla_%1 R)(%2,%3)%4) on horizontal projections, along %5",
                 [&](const auto& t) { return cur(t[4], t[0], t[1], t[2], t[3]); });
}

RecurrenceSolution phi_recurrence_solve(const CurvatureTensor& curv, const ContactStructure& cs) {
  const std::size_t n = cs.dim();
  const SquareMatrix phi2 = cs.phi_squared();
  const Tensor<5>& nr = *curv.nablaR;
  RecurrenceSolution out;

  const Verdict flat = [&] {
    Tensor<4> shape(n);
    for (std::size_t pos = 0; pos < shape.size(); ++pos) {
      const auto t = shape.unflatten(pos);
      if (!curv.R(t[3], t[0], t[1], t[2]).is_zero()) {
        return Verdict::refuted(make_witness(t, curv.R(t[3], t[0], t[1], t[2]), "R(%1,%2)%3 along %4"));
      }
    }
    return Verdict::pass();
  }();
  if (flat.holds()) {
    out.status = RecurrenceStatus::Trivial;
    out.notes.push_back("R vanishes identically: every 1-form satisfies the relation");
    return out;
  }
  const std::array<std::size_t, 4> anchor = {flat.witness->indices[0] - 1, flat.witness->indices[1] - 1,
                                             flat.witness->indices[2] - 1, flat.witness->indices[3] - 1};
  const ScalarExpr& r_anchor = flat.witness->value;

  // L_w(l, i, j, k) = phi^2 (nabla_{E_w} R)(E_i, E_j) E_k along E_l.
  auto lhs = [&](std::size_t w, std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    ScalarExpr s;
    for (std::size_t m = 0; m < n; ++m) {
      if (!phi2(l, m).is_zero() && !nr(m, w, i, j, k).is_zero()) s += phi2(l, m) * nr(m, w, i, j, k);
    }
    return s;
  };

  out.A.assign(n, ScalarExpr());
  Tensor<4> shape(n);
  for (std::size_t w = 0; w < n; ++w) {
    bool all_zero = true;
    for (std::size_t pos = 0; pos < shape.size() && all_zero; ++pos) {
      const auto t = shape.unflatten(pos);
      all_zero = lhs(w, t[3], t[0], t[1], t[2]).is_zero();
    }
    if (all_zero) continue;
    const ScalarExpr a = lhs(w, anchor[3], anchor[0], anchor[1], anchor[2]) / r_anchor;
    for (std::size_t pos = 0; pos < shape.size(); ++pos) {
      const auto t = shape.unflatten(pos);
      ScalarExpr res = lhs(w, t[3], t[0], t[1], t[2]) - a * curv.R(t[3], t[0], t[1], t[2]);
      if (!res.is_zero()) {
        out.status = RecurrenceStatus::Refuted;
        out.A.clear();
        out.witness = make_witness(std::array<std::size_t, 5>{w, t[0], t[1], t[2], t[3]}, std::move(res),
                                   "phi^2((nabla_%1 R)(%2,%3)%4) - A(%1) R(%2,%3)%4, along %5");
        out.notes.push_back("no 1-form A satisfies the recurrence relation");
        return out;
      }
    }
    out.A[w] = a;
  }
  const bool any_nonzero = std::any_of(out.A.begin(), out.A.end(), [](const ScalarExpr& a) { return !a.is_zero(); });
  if (!any_nonzero) {
    out.status = RecurrenceStatus::ZeroOnly;
    out.witness = flat.witness;
    out.witness->pattern = "phi^2 nabla R vanishes, so A = 0 is forced by R(%1,%2)%3 along %4";
    out.notes.push_back("the relation holds only with A = 0, which is not a phi-recurrent structure");
    return out;
  }
  out.status = RecurrenceStatus::Recurrent;
  for (std::size_t w = 0; w < n; ++w) {
    if (!out.A[w].is_zero() && !out.A[w].is_constant()) {
      out.notes.push_back("A(E" + std::to_string(w + 1) + ") vanishes on the zero locus of its numerator");
    }
  }
  return out;
}

std::string_view recurrence_status_name(RecurrenceStatus s) {
  switch (s) {
    case RecurrenceStatus::Recurrent: return "recurrent";
    case RecurrenceStatus::Trivial: return "trivial";
    case RecurrenceStatus::ZeroOnly: return "zero-only";
    case RecurrenceStatus::Refuted: return "refuted";
  }
  return "refuted";
}

std::string_view nullity_reason_name(NullityReason r) {
  switch (r) {
    case NullityReason::None: return "none";
    case NullityReason::NoScalarFits: return "no-scalar-fits";
    case NullityReason::ScalarNotConstant: return "scalar-not-constant";
  }
  return "none";
}

}  // namespace cmv
