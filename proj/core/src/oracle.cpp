#include "cmv/oracle.hpp"

#include "cmv/errors.hpp"
#include "cmv/linalg.hpp"

#include <charconv>
#include <cmath>
#include <random>

namespace cmv {

namespace {

// Finite differences run in exact rationals when the spec is trig-free, so
// only truncation error remains; with sin/cos they fall back to doubles.
template <class T>
using Mat = std::vector<T>;  // row-major n x n

template <class T>
using Pt = std::vector<T>;

double to_double(const mpq_class& v) { return v.get_d(); }

double eval_at(const ScalarExpr& e, const Pt<double>& p) { return e.eval_double(p); }
mpq_class eval_at(const ScalarExpr& e, const Pt<mpq_class>& p) {
  ExactPoint pt;
  for (std::size_t i = 0; i < p.size(); ++i) pt.emplace(i, p[i]);
  return e.eval(pt);
}

template <class T>
Mat<T> eval_matrix(const SquareMatrix& m, const Pt<T>& p) {
  const std::size_t n = m.size();
  Mat<T> out(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out[r * n + c] = eval_at(m(r, c), p);
  }
  return out;
}

template <class T>
Mat<T> invert(Mat<T> a, std::size_t n) {
  using std::abs;
  Mat<T> inv(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = T(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (abs(a[r * n + col]) > abs(a[piv * n + col])) piv = r;
    }
    if (a[piv * n + col] == 0) throw SingularFrame("singular matrix at sample point");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a[piv * n + c], a[col * n + c]);
        std::swap(inv[piv * n + c], inv[col * n + c]);
      }
    }
    const T d = a[col * n + col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col * n + c] /= d;
      inv[col * n + c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a[r * n + col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r * n + c] -= f * a[col * n + c];
        inv[r * n + c] -= f * inv[col * n + c];
      }
    }
  }
  return inv;
}

// Coordinate metric G_ij = g(d_i, d_j) with d_i = sum_a Finv(i, a) E_a.
template <class T>
Mat<T> coordinate_metric(const ManifoldSpec& spec, const SquareMatrix& fm, const Pt<T>& p) {
  const std::size_t n = spec.dim;
  const Mat<T> finv = invert(eval_matrix(fm, p), n);
  const Mat<T> g = eval_matrix(spec.metric, p);
  Mat<T> out(n * n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      T s = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) s += finv[i * n + a] * finv[j * n + b] * g[a * n + b];
      }
      out[i * n + j] = s;
    }
  }
  return out;
}

template <class T>
Pt<T> shifted(const Pt<T>& p, std::size_t i, const T& h) {
  Pt<T> q = p;
  q[i] += h;
  return q;
}

// Coordinate Christoffel symbols: nabla_{d_i} d_j = sum_l G(l, i, j) d_l.
template <class T>
Tensor<3, T> coordinate_christoffel(const ManifoldSpec& spec, const SquareMatrix& fm, const Pt<T>& p,
                                    const T& h) {
  const std::size_t n = spec.dim;
  const Mat<T> ginv = invert(coordinate_metric(spec, fm, p), n);
  std::vector<Mat<T>> dg(n);  // dg[c][a * n + b] = d_c G_ab
  for (std::size_t c = 0; c < n; ++c) {
    const Mat<T> plus = coordinate_metric(spec, fm, shifted(p, c, h));
    const Mat<T> minus = coordinate_metric(spec, fm, shifted(p, c, T(-h)));
    dg[c].resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) dg[c][k] = (plus[k] - minus[k]) / (2 * h);
  }
  Tensor<3, T> gamma(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        T s = 0;
        for (std::size_t m = 0; m < n; ++m) {
          s += ginv[l * n + m] * (dg[i][m * n + j] + dg[j][m * n + i] - dg[m][i * n + j]);
        }
        gamma(l, i, j) = s / 2;
      }
    }
  }
  return gamma;
}

template <class T>
Tensor<3, T> frame_connection(const ManifoldSpec& spec, const Pt<T>& p, const T& step) {
  const std::size_t n = spec.dim;
  const SquareMatrix fm = spec.frame_matrix();
  const Mat<T> f = eval_matrix(fm, p);
  const Mat<T> finv = invert(f, n);
  std::vector<Mat<T>> df(n);  // df[a][j * n + m] = d_a F(j, m)
  for (std::size_t a = 0; a < n; ++a) {
    const Mat<T> plus = eval_matrix(fm, shifted(p, a, step));
    const Mat<T> minus = eval_matrix(fm, shifted(p, a, T(-step)));
    df[a].resize(n * n);
    for (std::size_t k = 0; k < n * n; ++k) df[a][k] = (plus[k] - minus[k]) / (2 * step);
  }
  const Tensor<3, T> gc = coordinate_christoffel(spec, fm, p, step);
  Tensor<3, T> gamma(n);
  std::vector<T> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // nabla_{E_i} E_j in coordinates, then on the frame.
      for (std::size_t m = 0; m < n; ++m) {
        T s = 0;
        for (std::size_t a = 0; a < n; ++a) {
          T inner = df[a][j * n + m];
          for (std::size_t b = 0; b < n; ++b) inner += f[j * n + b] * gc(m, a, b);
          s += f[i * n + a] * inner;
        }
        v[m] = s;
      }
      for (std::size_t k = 0; k < n; ++k) {
        T s = 0;
        for (std::size_t m = 0; m < n; ++m) s += v[m] * finv[m * n + k];
        gamma(k, i, j) = s;
      }
    }
  }
  return gamma;
}

template <class T>
Tensor<4, T> frame_curvature(const ManifoldSpec& spec, const Pt<T>& p, const T& step) {
  const std::size_t n = spec.dim;
  const SquareMatrix fm = spec.frame_matrix();
  const Tensor<3, T> gc = coordinate_christoffel(spec, fm, p, step);
  std::vector<Tensor<3, T>> dgc;  // dgc[c](l, i, j) = d_c G(l, i, j)
  for (std::size_t c = 0; c < n; ++c) {
    const Tensor<3, T> plus = coordinate_christoffel(spec, fm, shifted(p, c, step), step);
    const Tensor<3, T> minus = coordinate_christoffel(spec, fm, shifted(p, c, T(-step)), step);
    Tensor<3, T> d(n);
    for (std::size_t k = 0; k < d.size(); ++k) d.data()[k] = (plus.data()[k] - minus.data()[k]) / (2 * step);
    dgc.push_back(std::move(d));
  }
  Tensor<4, T> rc(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          T s = dgc[i](l, j, k) - dgc[j](l, i, k);
          for (std::size_t m = 0; m < n; ++m) {
            s += gc(m, j, k) * gc(l, i, m) - gc(m, i, k) * gc(l, j, m);
          }
          rc(l, i, j, k) = s;
        }
      }
    }
  }
  const Mat<T> f = eval_matrix(fm, p);
  const Mat<T> finv = invert(f, n);
  // Contract one slot at a time to go from coordinates to the frame.
  Tensor<4, T> t1(n), t2(n), t3(n), out(n);
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const auto [d, i, j, k] = out.unflatten(pos);
    T s = 0;
    for (std::size_t l = 0; l < n; ++l) s += rc(l, i, j, k) * finv[l * n + d];
    t1(d, i, j, k) = s;
  }
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const auto [d, a, j, k] = out.unflatten(pos);
    T s = 0;
    for (std::size_t i = 0; i < n; ++i) s += f[a * n + i] * t1(d, i, j, k);
    t2(d, a, j, k) = s;
  }
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const auto [d, a, b, k] = out.unflatten(pos);
    T s = 0;
    for (std::size_t j = 0; j < n; ++j) s += f[b * n + j] * t2(d, a, j, k);
    t3(d, a, b, k) = s;
  }
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const auto [d, a, b, c] = out.unflatten(pos);
    T s = 0;
    for (std::size_t k = 0; k < n; ++k) s += f[c * n + k] * t3(d, a, b, k);
    out(d, a, b, c) = s;
  }
  return out;
}

template <std::size_t N, class T>
Tensor<N, double> to_double(const Tensor<N, T>& t) {
  Tensor<N, double> out(t.dim());
  for (std::size_t k = 0; k < t.size(); ++k) out.data()[k] = to_double(t.data()[k]);
  return out;
}

// Shortest decimal form of the step as an exact rational.
mpq_class decimal_rational(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string text(buf, res.ptr);
  long exp10 = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stol(text.substr(e + 1));
    text.erase(e);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(text.size() - dot - 1);
    text.erase(dot, 1);
  }
  mpq_class q{mpz_class(text)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) {
    q /= scale;
  } else {
    q *= scale;
  }
  q.canonicalize();
  return q;
}

Pt<mpq_class> exact_coords(const SamplePoint& p) {
  Pt<mpq_class> out;
  for (std::size_t i = 0; i < p.coords.size(); ++i) out.push_back(p.exact.at(i));
  return out;
}

bool positive_definite(Mat<double> a, std::size_t n) {
  // Cholesky without storing the factor.
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 1e-12)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  return true;
}

template <std::size_t N>
std::vector<std::size_t> one_based(const std::array<std::size_t, N>& idx) {
  std::vector<std::size_t> out;
  for (std::size_t i : idx) out.push_back(i + 1);
  return out;
}

template <std::size_t N, class Sym, class Num>
NumericReport compare(std::string name, std::size_t dim, const std::vector<SamplePoint>& points,
                      double step, double tol, Sym&& symbolic, Num&& numeric) {
  NumericReport rep;
  rep.tensor = std::move(name);
  rep.points = points.size();
  rep.step = step;
  rep.tolerance = tol;
  Tensor<N, double> shape(dim);
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const auto& p = points[pi].coords;
    const Tensor<N, double> fd = numeric(points[pi]);
    for (std::size_t pos = 0; pos < shape.size(); ++pos) {
      const auto idx = shape.unflatten(pos);
      const double ref = symbolic(idx, p);
      const double dev = std::abs(ref - fd.at(idx));
      const double rel = dev / std::max(1.0, std::abs(ref));
      rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
      if (rep.worst_component.empty() || rel > rep.max_rel_dev) {
        rep.max_rel_dev = rel;
        rep.worst_component = one_based(idx);
        rep.worst_point = pi;
      }
    }
  }
  rep.pass = rep.max_rel_dev <= tol;
  return rep;
}

}  // namespace

std::vector<SamplePoint> sample_points(const ManifoldSpec& spec, std::size_t n, std::uint64_t seed,
                                       const SamplingOptions& options, std::size_t* rejections) {
  const std::size_t dim = spec.dim;
  const ScalarExpr locus = ScalarExpr::fraction(excluded_locus(spec), Polynomial(1));
  std::mt19937_64 gen(seed);
  const auto width = static_cast<std::uint64_t>(2 * options.box);
  const auto den = static_cast<std::uint64_t>(options.denominator);
  std::vector<SamplePoint> out;
  std::size_t rejected = 0;
  while (out.size() < n) {
    SamplePoint pt;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t r = gen();
      const long a = static_cast<long>(r % width) - options.box;
      const long b = static_cast<long>((r / width) % den);
      mpq_class v(a * static_cast<long>(den) + b, static_cast<long>(den));
      v.canonicalize();
      pt.coords.push_back(v.get_d());
      pt.exact.emplace(i, std::move(v));
    }
    bool ok = true;
    try {
      if (spec.trig) {
        ok = std::abs(locus.eval_double(pt.coords)) > 1e-9;
      } else {
        ok = locus.eval(pt.exact) != 0;
      }
      if (ok) ok = positive_definite(eval_matrix(spec.metric, pt.coords), dim);
    } catch (const DomainPole&) {
      ok = false;
    }
    if (ok) {
      out.push_back(std::move(pt));
    } else if (++rejected > options.max_rejections) {
      throw SamplingExhausted("no admissible sample points after " + std::to_string(rejected) +
                              " rejections (excluded locus or non-positive metric)");
    }
  }
  if (rejections != nullptr) *rejections = rejected;
  return out;
}

Tensor<3, double> fd_connection(const ManifoldSpec& spec, const SamplePoint& p, double step) {
  if (spec.trig) return frame_connection<double>(spec, p.coords, step);
  return to_double(frame_connection<mpq_class>(spec, exact_coords(p), decimal_rational(step)));
}

Tensor<4, double> fd_curvature(const ManifoldSpec& spec, const SamplePoint& p, double step) {
  if (spec.trig) return frame_curvature<double>(spec, p.coords, step);
  return to_double(frame_curvature<mpq_class>(spec, exact_coords(p), decimal_rational(step)));
}

NumericReport cross_validate_connection(const ManifoldSpec& spec, const ConnectionTable& conn,
                                        const std::vector<SamplePoint>& points, double step,
                                        double tol) {
  return compare<3>(
      "connection", spec.dim, points, step, tol,
      [&](const std::array<std::size_t, 3>& idx, const std::vector<double>& p) {
        return conn.gamma.at(idx).eval_double(p);
      },
      [&](const SamplePoint& p) { return fd_connection(spec, p, step); });
}

NumericReport cross_validate_curvature(const ManifoldSpec& spec, const CurvatureTensor& curv,
                                       const std::vector<SamplePoint>& points, double step,
                                       double tol) {
  return compare<4>(
      "curvature", spec.dim, points, step, tol,
      [&](const std::array<std::size_t, 4>& idx, const std::vector<double>& p) {
        return curv.R.at(idx).eval_double(p);
      },
      [&](const SamplePoint& p) { return fd_curvature(spec, p, step); });
}

NumericReport cross_validate_identity(const std::string& name,
                                      const std::vector<ScalarExpr>& residuals,
                                      const std::vector<SamplePoint>& points, double tol) {
  NumericReport rep;
  rep.tensor = name;
  rep.points = points.size();
  rep.tolerance = tol;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (std::size_t r = 0; r < residuals.size(); ++r) {
      const double v = std::abs(residuals[r].eval_double(points[pi].coords));
      if (rep.worst_component.empty() || v > rep.max_abs_dev) {
        rep.max_abs_dev = v;
        rep.worst_component = {r + 1};
        rep.worst_point = pi;
      }
    }
  }
  rep.max_rel_dev = rep.max_abs_dev;
  rep.pass = rep.max_abs_dev <= tol;
  return rep;
}

}  // namespace cmv
