#include "cmv/riemann.hpp"

#include "cmv/errors.hpp"
#include "cmv/linalg.hpp"

#include <array>

namespace cmv {

namespace {

template <std::size_t N>
Witness make_witness(const std::array<std::size_t, N>& idx, ScalarExpr value, std::string pattern) {
  Witness w;
  for (std::size_t i : idx) w.indices.push_back(i + 1);
  w.value = std::move(value);
  w.pattern = std::move(pattern);
  return w;
}

// First index tuple (row-major) whose residual is nonzero.
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

ScalarExpr delta(std::size_t a, std::size_t b) { return a == b ? ScalarExpr(1) : ScalarExpr(); }

}  // namespace

MetricFrame MetricFrame::from(const SquareMatrix& g) { return MetricFrame{g, inverse(g)}; }

FrameVec ConnectionTable::nabla_frame(std::size_t i, std::size_t j) const {
  FrameVec v = FrameVec::zero(gamma.dim());
  for (std::size_t k = 0; k < gamma.dim(); ++k) v.c[k] = gamma(k, i, j);
  return v;
}

FrameVec CurvatureTensor::apply(const FrameVec& x, const FrameVec& y, const FrameVec& z) const {
  const std::size_t n = dim();
  FrameVec out = FrameVec::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y.c[j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (z.c[k].is_zero()) continue;
        const ScalarExpr coeff = x.c[i] * y.c[j] * z.c[k];
        for (std::size_t l = 0; l < n; ++l) {
          if (!R(l, i, j, k).is_zero()) out.c[l] += coeff * R(l, i, j, k);
        }
      }
    }
  }
  return out;
}

FrameVec CurvatureTensor::apply_nabla(const FrameVec& w, const FrameVec& x, const FrameVec& y,
                                      const FrameVec& z) const {
  const std::size_t n = dim();
  const Tensor<5>& t = *nablaR;
  FrameVec out = FrameVec::zero(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (w.c[a].is_zero()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (x.c[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y.c[j].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (z.c[k].is_zero()) continue;
          const ScalarExpr coeff = w.c[a] * x.c[i] * y.c[j] * z.c[k];
          for (std::size_t l = 0; l < n; ++l) {
            if (!t(l, a, i, j, k).is_zero()) out.c[l] += coeff * t(l, a, i, j, k);
          }
        }
      }
    }
  }
  return out;
}

ConnectionTable koszul_connection(const Frame& frame, const StructureCoeffs& c,
                                  const MetricFrame& metric) {
  const std::size_t n = frame.dim();
  const SquareMatrix& g = metric.g;
  // g(E_a, [E_b, E_c]).
  auto g_bracket = [&](std::size_t a, std::size_t b, std::size_t cc) {
    ScalarExpr s;
    for (std::size_t m = 0; m < n; ++m) {
      if (!c(m, b, cc).is_zero() && !g(a, m).is_zero()) s += c(m, b, cc) * g(a, m);
    }
    return s;
  };
  // Koszul: 2 g(nabla_{E_i} E_j, E_k).
  Tensor<3> lowered(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        ScalarExpr s = frame.derivative(i, g(j, k)) + frame.derivative(j, g(k, i)) -
                       frame.derivative(k, g(i, j)) - g_bracket(i, j, k) - g_bracket(j, i, k) +
                       g_bracket(k, i, j);
        lowered(i, j, k) = s / ScalarExpr(2);
      }
    }
  }
  ConnectionTable conn{Tensor<3>(n)};
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ScalarExpr s;
        for (std::size_t k = 0; k < n; ++k) {
          if (!metric.g_inv(l, k).is_zero() && !lowered(i, j, k).is_zero()) {
            s += metric.g_inv(l, k) * lowered(i, j, k);
          }
        }
        conn.gamma(l, i, j) = s;
      }
    }
  }
  return conn;
}

FrameVec covariant_derivative(const FrameVec& x, const FrameVec& y, const ConnectionTable& conn,
                              const Frame& frame) {
  const std::size_t n = frame.dim();
  FrameVec out = FrameVec::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x.c[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y.c[j].is_zero()) continue;
      out.c[j] += x.c[i] * frame.derivative(i, y.c[j]);
      for (std::size_t k = 0; k < n; ++k) {
        if (!conn.gamma(k, i, j).is_zero()) out.c[k] += x.c[i] * y.c[j] * conn.gamma(k, i, j);
      }
    }
  }
  return out;
}

CurvatureTensor curvature_tensor(const ConnectionTable& conn, const StructureCoeffs& c,
                                 const Frame& frame) {
  const std::size_t n = frame.dim();
  const Tensor<3>& G = conn.gamma;
  CurvatureTensor curv{Tensor<4>(n), std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          ScalarExpr s = frame.derivative(i, G(l, j, k)) - frame.derivative(j, G(l, i, k));
          for (std::size_t m = 0; m < n; ++m) {
            if (!G(m, j, k).is_zero() && !G(l, i, m).is_zero()) s += G(m, j, k) * G(l, i, m);
            if (!G(m, i, k).is_zero() && !G(l, j, m).is_zero()) s -= G(m, i, k) * G(l, j, m);
            if (!c(m, i, j).is_zero() && !G(l, m, k).is_zero()) s -= c(m, i, j) * G(l, m, k);
          }
          curv.R(l, j, i, k) = -s;
          curv.R(l, i, j, k) = std::move(s);
        }
      }
    }
  }
  return curv;
}

RicciData ricci(const CurvatureTensor& curv, const MetricFrame& metric) {
  const std::size_t n = curv.dim();
  RicciData out{SquareMatrix(n), SquareMatrix(n), ScalarExpr()};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      ScalarExpr s;
      for (std::size_t i = 0; i < n; ++i) s += curv.R(i, i, j, k);
      out.S(j, k) = s;
    }
  }
  out.Q = metric.g_inv * out.S;
  for (std::size_t i = 0; i < n; ++i) out.r += out.Q(i, i);
  return out;
}

Tensor<5> nabla_R(const CurvatureTensor& curv, const ConnectionTable& conn, const Frame& frame) {
  const std::size_t n = curv.dim();
  const Tensor<3>& G = conn.gamma;
  const Tensor<4>& R = curv.R;
  Tensor<5> out(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) {
            ScalarExpr s = frame.derivative(w, R(l, i, j, k));
            for (std::size_t m = 0; m < n; ++m) {
              if (!G(l, w, m).is_zero() && !R(m, i, j, k).is_zero()) s += G(l, w, m) * R(m, i, j, k);
              if (!G(m, w, i).is_zero() && !R(l, m, j, k).is_zero()) s -= G(m, w, i) * R(l, m, j, k);
              if (!G(m, w, j).is_zero() && !R(l, i, m, k).is_zero()) s -= G(m, w, j) * R(l, i, m, k);
              if (!G(m, w, k).is_zero() && !R(l, i, j, m).is_zero()) s -= G(m, w, k) * R(l, i, j, m);
            }
            out(l, w, j, i, k) = -s;
            out(l, w, i, j, k) = std::move(s);
          }
        }
      }
    }
  }
  return out;
}

// ------------------------------------------------------------- classifiers

namespace {

// Curvature components scanned in reading order R(E_i, E_j) E_k along E_l.
const char* const kCurvPattern = "R(%1,%2)%3 along %4";

}  // namespace

Verdict check_flat(const CurvatureTensor& curv) {
  return scan<4>(curv.dim(), kCurvPattern,
                 [&](const auto& t) { return curv.R(t[3], t[0], t[1], t[2]); });
}

ConstantCurvatureResult check_constant_curvature(const CurvatureTensor& curv,
                                                 const MetricFrame& metric) {
  const std::size_t n = curv.dim();
  const SquareMatrix& g = metric.g;
  // Model component of g(Y,Z) X - g(X,Z) Y for (X,Y,Z) = (E_i,E_j,E_k) along E_l.
  auto model = [&](std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    return g(j, k) * delta(l, i) - g(i, k) * delta(l, j);
  };
  Tensor<4> shape(n);
  std::optional<ScalarExpr> lambda;
  for (std::size_t pos = 0; pos < shape.size() && !lambda; ++pos) {
    const auto t = shape.unflatten(pos);
    const ScalarExpr m = model(t[3], t[0], t[1], t[2]);
    if (!m.is_zero()) lambda = curv.R(t[3], t[0], t[1], t[2]) / m;
  }
  ConstantCurvatureResult out;
  if (!lambda) {
    // Only reachable in dimension 1.
    out.verdict = check_flat(curv);
    if (out.verdict.holds()) out.lambda = ScalarExpr();
    return out;
  }
  out.verdict = scan<4>(n, "R(%1,%2)%3 - lambda model, along %4", [&](const auto& t) {
    return curv.R(t[3], t[0], t[1], t[2]) - *lambda * model(t[3], t[0], t[1], t[2]);
  });
  if (!out.verdict.holds()) return out;
  if (!lambda->is_coordinate_free(n)) {
    Witness w;
    w.value = *lambda;
    w.pattern = "lambda is not constant";
    out.verdict = Verdict::refuted(std::move(w));
    out.verdict.notes.push_back("lambda non-constant");
    return out;
  }
  out.lambda = lambda;
  return out;
}

Verdict check_locally_symmetric(const CurvatureTensor& curv) {
  const Tensor<5>& t = *curv.nablaR;
  return scan<5>(curv.dim(), "(nabla_%1 R)(%2,%3)%4 along %5",
                 [&](const auto& i) { return t(i[4], i[0], i[1], i[2], i[3]); });
}

Verdict check_3d_decomposition(const CurvatureTensor& curv, const RicciData& ric,
                               const MetricFrame& metric) {
  if (curv.dim() != 3) {
    throw DimensionError("the Ricci decomposition identity requires dimension 3, got " +
                         std::to_string(curv.dim()));
  }
  const SquareMatrix& g = metric.g;
  const ScalarExpr half_r = ric.r / ScalarExpr(2);
  return scan<4>(3, "R(%1,%2)%3 - decomposition, along %4", [&](const auto& t) {
    const std::size_t i = t[0], j = t[1], k = t[2], l = t[3];
    ScalarExpr rhs = g(j, k) * ric.Q(l, i) - g(i, k) * ric.Q(l, j) + ric.S(j, k) * delta(l, i) -
                     ric.S(i, k) * delta(l, j) +
                     half_r * (g(i, k) * delta(l, j) - g(j, k) * delta(l, i));
    return curv.R(l, i, j, k) - rhs;
  });
}

// -------------------------------------------------------------- self-tests

Verdict check_jacobi(const StructureCoeffs& c, const Frame& frame) {
  const std::size_t n = frame.dim();
  // [E_a, [E_b, E_d]] along E_p.
  auto nested = [&](std::size_t a, std::size_t b, std::size_t d, std::size_t p) {
    ScalarExpr s = frame.derivative(a, c(p, b, d));
    for (std::size_t m = 0; m < n; ++m) {
      if (!c(m, b, d).is_zero() && !c(p, a, m).is_zero()) s += c(m, b, d) * c(p, a, m);
    }
    return s;
  };
  return scan<4>(n, "Jacobi sum over (%1,%2,%3) along %4", [&](const auto& t) {
    return nested(t[0], t[1], t[2], t[3]) + nested(t[1], t[2], t[0], t[3]) +
           nested(t[2], t[0], t[1], t[3]);
  });
}

Verdict check_metric_compatibility(const ConnectionTable& conn, const MetricFrame& metric,
                                   const Frame& frame) {
  const std::size_t n = frame.dim();
  const SquareMatrix& g = metric.g;
  return scan<3>(n, "%1 g(%2,%3) - metric compatibility", [&](const auto& t) {
    const std::size_t i = t[0], j = t[1], k = t[2];
    ScalarExpr s = frame.derivative(i, g(j, k));
    for (std::size_t m = 0; m < n; ++m) {
      s -= conn.gamma(m, i, j) * g(m, k);
      s -= conn.gamma(m, i, k) * g(j, m);
    }
    return s;
  });
}

Verdict check_torsion_free(const ConnectionTable& conn, const StructureCoeffs& c) {
  return scan<3>(conn.gamma.dim(), "torsion T(%1,%2) along %3", [&](const auto& t) {
    return conn.gamma(t[2], t[0], t[1]) - conn.gamma(t[2], t[1], t[0]) - c(t[2], t[0], t[1]);
  });
}

Verdict check_curvature_antisymmetry(const CurvatureTensor& curv) {
  return scan<4>(curv.dim(), "R(%1,%2)%3 + R(%2,%1)%3 along %4", [&](const auto& t) {
    return curv.R(t[3], t[0], t[1], t[2]) + curv.R(t[3], t[1], t[0], t[2]);
  });
}

Verdict check_first_bianchi(const CurvatureTensor& curv) {
  return scan<4>(curv.dim(), "first Bianchi sum over (%1,%2,%3) along %4", [&](const auto& t) {
    const std::size_t i = t[0], j = t[1], k = t[2], l = t[3];
    return curv.R(l, i, j, k) + curv.R(l, j, k, i) + curv.R(l, k, i, j);
  });
}

Verdict check_lowered_symmetries(const CurvatureTensor& curv, const MetricFrame& metric) {
  const std::size_t n = curv.dim();
  Tensor<4> low(n);  // g(R(E_i,E_j)E_k, E_m)
  for (std::size_t pos = 0; pos < low.size(); ++pos) {
    const auto t = low.unflatten(pos);
    ScalarExpr s;
    for (std::size_t l = 0; l < n; ++l) {
      if (!curv.R(l, t[0], t[1], t[2]).is_zero()) s += metric.g(t[3], l) * curv.R(l, t[0], t[1], t[2]);
    }
    low.at(t) = s;
  }
  Verdict v = scan<4>(n, "g(R(%1,%2)%3,%4) + g(R(%1,%2)%4,%3)", [&](const auto& t) {
    return low(t[0], t[1], t[2], t[3]) + low(t[0], t[1], t[3], t[2]);
  });
  if (!v.holds()) return v;
  return scan<4>(n, "g(R(%1,%2)%3,%4) - g(R(%3,%4)%1,%2)", [&](const auto& t) {
    return low(t[0], t[1], t[2], t[3]) - low(t[2], t[3], t[0], t[1]);
  });
}

Verdict check_second_bianchi(const CurvatureTensor& curv) {
  const Tensor<5>& t = *curv.nablaR;
  return scan<5>(curv.dim(), "second Bianchi sum over (%1,%2,%3) at %4 along %5",
                 [&](const auto& x) {
                   const std::size_t w = x[0], i = x[1], j = x[2], k = x[3], l = x[4];
                   return t(l, w, i, j, k) + t(l, i, j, w, k) + t(l, j, w, i, k);
                 });
}

}  // namespace cmv
