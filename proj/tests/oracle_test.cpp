#include "test_support.hpp"

#include "cmv/errors.hpp"
#include "cmv/oracle.hpp"

#include <doctest.h>

#include <cmath>

using cmv::ScalarExpr;

namespace {

cmv::SamplePoint at(std::initializer_list<mpq_class> values) {
  cmv::SamplePoint p;
  std::size_t i = 0;
  for (const auto& v : values) {
    p.exact[i++] = v;
    p.coords.push_back(v.get_d());
  }
  return p;
}

double max_connection_error(const cmv::Geometry& geo, const cmv::SamplePoint& p, double step) {
  const auto fd = cmv::fd_connection(geo.spec, p, step);
  double worst = 0;
  for (std::size_t pos = 0; pos < fd.size(); ++pos) {
    const double sym = geo.connection.gamma.data()[pos].eval(p.exact).get_d();
    worst = std::max(worst, std::abs(sym - fd.data()[pos]));
  }
  return worst;
}

}  // namespace

TEST_CASE("sampling is deterministic in the seed") {
  const cmv::ManifoldSpec spec = cmvtest::load("punctured");
  const auto a = cmv::sample_points(spec, 10, 42);
  const auto b = cmv::sample_points(spec, 10, 42);
  const auto c = cmv::sample_points(spec, 10, 43);
  REQUIRE(a.size() == 10);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords == b[i].coords);
    CHECK(a[i].exact == b[i].exact);
    if (a[i].coords != c[i].coords) differs = true;
    // Never on the excluded locus x = 0.
    CHECK(a[i].exact.at(0) != 0);
  }
  CHECK(differs);
}

TEST_CASE("sampling rejects nothing without denominators") {
  std::size_t rejected = 99;
  const auto pts = cmv::sample_points(cmvtest::load("heisenberg"), 20, 5, {}, &rejected);
  CHECK(pts.size() == 20);
  CHECK(rejected == 0);
}

TEST_CASE("sampling gives up on an indefinite metric") {
  const cmv::ManifoldSpec spec = cmv::parse_spec(
      "dim 3\ncoords x y z\nframe A = [1, 0, 0]\nframe B = [0, 1, 0]\nframe C = [0, 0, 1]\n"
      "metric A A = -1\nmetric A B = 0\nmetric A C = 0\nmetric B B = 1\nmetric B C = 0\nmetric C C = 1\nxi C\n");
  cmv::SamplingOptions opts;
  opts.max_rejections = 50;
  CHECK_THROWS_AS(cmv::sample_points(spec, 3, 1, opts), cmv::SamplingExhausted);
}

TEST_CASE("finite differences agree with the symbolic connection") {
  const cmv::Geometry eu = cmvtest::geometry("euclidean");
  const auto fd = cmv::fd_connection(eu.spec, at({1, 2, 3}), 1e-4);
  for (double v : fd.data()) CHECK(std::abs(v) < 1e-12);

  const cmv::Geometry ex = cmvtest::geometry("punctured");
  const cmv::SamplePoint p = at({2, 1, 1});
  CHECK(max_connection_error(ex, p, 1e-5) < 1e-8);
  const auto g = cmv::fd_connection(ex.spec, p, 1e-5);
  CHECK(g(1, 0, 0) == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(g(2, 1, 0) == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("finite differences agree with the symbolic curvature") {
  const cmv::Geometry ex = cmvtest::geometry("punctured");
  const cmv::SamplePoint p = at({2, 1, 1});
  const auto fd = cmv::fd_curvature(ex.spec, p, 1e-4);
  // R(E1, E2) E3 along E2 = -4/x = -2 at x = 2.
  CHECK(fd(1, 0, 1, 2) == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(fd(2, 0, 1, 1) == doctest::Approx(2.0).epsilon(1e-6));

  const auto pts = cmv::sample_points(ex.spec, 10, 7);
  const auto rep = cmv::cross_validate_curvature(ex.spec, ex.curvature, pts, 1e-5, 1e-4);
  CHECK(rep.pass);
  CHECK(rep.points == 10);
  CHECK(rep.tensor == "curvature");
}

TEST_CASE("truncation error shrinks quadratically with the step") {
  const cmv::Geometry hy = cmvtest::geometry("hyperbolic");
  const cmv::SamplePoint p = at({mpq_class(1, 2), mpq_class(-3, 4), mpq_class(3, 2)});
  const double e1 = max_connection_error(hy, p, 0.1);
  const double e2 = max_connection_error(hy, p, 0.05);
  REQUIRE(e1 > 0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("a coarse step fails the tolerance") {
  const cmv::Geometry ex = cmvtest::geometry("punctured");
  const auto pts = cmv::sample_points(ex.spec, 10, 1);
  const auto rep = cmv::cross_validate_connection(ex.spec, ex.connection, pts, 10.0, 1e-6);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_rel_dev > 1e-6);
}

TEST_CASE("a corrupted component is detected and located") {
  const cmv::Geometry ex = cmvtest::geometry("punctured");
  const auto pts = cmv::sample_points(ex.spec, 10, 1);
  CHECK(cmv::cross_validate_connection(ex.spec, ex.connection, pts, 1e-5, 1e-6).pass);

  cmv::ConnectionTable bad = ex.connection;
  bad.gamma(2, 0, 1) += ScalarExpr(1);
  const auto rep = cmv::cross_validate_connection(ex.spec, bad, pts, 1e-5, 1e-6);
  CHECK_FALSE(rep.pass);
  CHECK(rep.worst_component == std::vector<std::size_t>{3, 1, 2});
  CHECK(rep.max_abs_dev == doctest::Approx(1.0).epsilon(1e-6));

  cmv::CurvatureTensor badR = ex.curvature;
  badR.R(0, 1, 2, 2) += ScalarExpr(1);
  const auto rr = cmv::cross_validate_curvature(ex.spec, badR, pts, 1e-4, 1e-4);
  CHECK_FALSE(rr.pass);
  CHECK(rr.worst_component == std::vector<std::size_t>{1, 2, 3, 3});
}

TEST_CASE("identity residuals") {
  const cmv::ManifoldSpec spec = cmvtest::load("punctured");
  const auto pts = cmv::sample_points(spec, 5, 2);
  const auto ok = cmv::cross_validate_identity("zero", {ScalarExpr(), ScalarExpr()}, pts, 1e-9);
  CHECK(ok.pass);
  CHECK(ok.max_abs_dev == 0);

  const auto bad = cmv::cross_validate_identity(
      "offset", {ScalarExpr(), cmvtest::E("1/x")}, pts, 1e-9);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_component == std::vector<std::size_t>{2});
}

TEST_CASE("trig instances use floating differences") {
  const cmv::Geometry fl = cmvtest::geometry("flat_contact", true);
  const auto pts = cmv::sample_points(fl.spec, 6, 3);
  CHECK(cmv::cross_validate_connection(fl.spec, fl.connection, pts, 1e-5, 1e-6).pass);
  CHECK(cmv::cross_validate_curvature(fl.spec, fl.curvature, pts, 1e-3, 1e-4).pass);
}
