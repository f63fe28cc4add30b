#include "test_support.hpp"

#include "cmv/errors.hpp"

#include <doctest.h>

#include <map>
#include <tuple>

using cmv::ScalarExpr;
using cmvtest::E;

namespace {

using Index3 = std::tuple<std::size_t, std::size_t, std::size_t>;
using Index4 = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

// Every component not listed must vanish. Indices are 0-based.
void check_connection(const cmv::Geometry& geo, const std::map<Index3, ScalarExpr>& nonzero) {
  const auto& g = geo.connection.gamma;
  const std::size_t n = geo.dim();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto it = nonzero.find({k, i, j});
        const ScalarExpr want = it == nonzero.end() ? ScalarExpr() : it->second;
        INFO("gamma(" << k << "," << i << "," << j << ")");
        CHECK(g(k, i, j) == want);
      }
    }
  }
}

// Lists R(l, i, j, k) for i < j; the rest follows by antisymmetry.
void check_curvature(const cmv::Geometry& geo, const std::map<Index4, ScalarExpr>& nonzero) {
  const auto& R = geo.curvature.R;
  const std::size_t n = geo.dim();
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          ScalarExpr want;
          if (i < j) {
            if (auto it = nonzero.find({l, i, j, k}); it != nonzero.end()) want = it->second;
          } else if (j < i) {
            if (auto it = nonzero.find({l, j, i, k}); it != nonzero.end()) want = -it->second;
          }
          INFO("R(" << l << "," << i << "," << j << "," << k << ")");
          CHECK(R(l, i, j, k) == want);
        }
      }
    }
  }
}

const char* const kCorpus[] = {"punctured", "heisenberg", "hyperbolic", "euclidean",
                               "darboux", "punctured_bad_phi", "heisenberg_bad_phi",
                               "heisenberg5"};

}  // namespace

TEST_CASE("example frame: connection table") {
  const cmv::Geometry geo = cmvtest::geometry("punctured");
  check_connection(geo, {{{1, 0, 0}, E("-2/x")},
                         {{0, 0, 1}, E("2/x")},
                         {{2, 1, 0}, ScalarExpr(-2)},
                         {{0, 1, 2}, ScalarExpr(2)}});

  // nabla_{E1}(x E2) = E1(x) E2 + x nabla_{E1} E2 = 2 E1.
  cmv::FrameVec xe2 = cmv::FrameVec::zero(3);
  xe2.c[1] = E("x");
  const cmv::FrameVec d = cmv::covariant_derivative(cmv::FrameVec::unit(3, 0), xe2,
                                                    geo.connection, geo.frame);
  CHECK(d.c[0] == ScalarExpr(2));
  CHECK(d.c[1].is_zero());
  CHECK(d.c[2].is_zero());
}

TEST_CASE("example frame: curvature and Ricci") {
  const cmv::Geometry geo = cmvtest::geometry("punctured");
  check_curvature(geo, {{{2, 0, 1, 1}, E("4/x")},
                        {{1, 0, 1, 2}, E("-4/x")},
                        {{1, 1, 2, 0}, E("4/x")},
                        {{0, 1, 2, 1}, E("-4/x")}});
  // R(E1, E2) E3 = -(4/x) E2, and the component R(E2,E1)E2 along E3.
  const cmv::FrameVec r = geo.curvature.apply(cmv::FrameVec::unit(3, 0), cmv::FrameVec::unit(3, 1),
                                              cmv::FrameVec::unit(3, 2));
  CHECK(r.c[1] == E("-4/x"));
  CHECK(geo.curvature.R(2, 1, 0, 1) == E("-4/x"));
  CHECK(geo.ricci.S(0, 2) == E("4/x"));
  CHECK(geo.ricci.S(2, 0) == E("4/x"));
  CHECK(geo.ricci.S(2, 2).is_zero());
  CHECK(geo.ricci.r.is_zero());
}

TEST_CASE("Heisenberg frame") {
  const cmv::Geometry geo = cmvtest::geometry("heisenberg");
  check_connection(geo, {{{2, 0, 1}, ScalarExpr(1)},
                         {{1, 0, 2}, ScalarExpr(-1)},
                         {{2, 1, 0}, ScalarExpr(-1)},
                         {{0, 1, 2}, ScalarExpr(1)},
                         {{1, 2, 0}, ScalarExpr(-1)},
                         {{0, 2, 1}, ScalarExpr(1)}});
  check_curvature(geo, {{{1, 0, 1, 0}, ScalarExpr(3)},
                        {{0, 0, 1, 1}, ScalarExpr(-3)},
                        {{2, 0, 2, 0}, ScalarExpr(-1)},
                        {{0, 0, 2, 2}, ScalarExpr(1)},
                        {{2, 1, 2, 1}, ScalarExpr(-1)},
                        {{1, 1, 2, 2}, ScalarExpr(1)}});
  // R(e1, e3) e3 = e1 and g(R(e1, e2) e2, e1) = -3.
  const auto e = [](std::size_t i) { return cmv::FrameVec::unit(3, i); };
  const cmv::FrameVec r = geo.curvature.apply(e(0), e(2), e(2));
  CHECK(r.c[0] == ScalarExpr(1));
  CHECK(geo.metric.g.form(geo.curvature.apply(e(0), e(1), e(1)), e(0)) == ScalarExpr(-3));
  CHECK(geo.ricci.S(0, 0) == ScalarExpr(-2));
  CHECK(geo.ricci.S(1, 1) == ScalarExpr(-2));
  CHECK(geo.ricci.S(2, 2) == ScalarExpr(2));
  CHECK(geo.ricci.r == ScalarExpr(-2));
}

TEST_CASE("hyperbolic space has constant curvature -1 and is symmetric") {
  const cmv::Geometry geo = cmvtest::geometry("hyperbolic");
  CHECK(geo.ricci.r == ScalarExpr(-6));
  REQUIRE(geo.curvature.nablaR.has_value());
  for (const auto& v : geo.curvature.nablaR->data()) CHECK(v.is_zero());

  const auto cc = cmv::check_constant_curvature(geo.curvature, geo.metric);
  CHECK(cc.verdict.status == cmv::Status::Holds);
  REQUIRE(cc.lambda.has_value());
  CHECK(*cc.lambda == ScalarExpr(-1));
  CHECK(cmv::check_locally_symmetric(geo.curvature).status == cmv::Status::Holds);
  CHECK(cmv::check_flat(geo.curvature).status == cmv::Status::Refuted);
  CHECK(cmv::check_3d_decomposition(geo.curvature, geo.ricci, geo.metric).holds());
}

TEST_CASE("flatness and its witnesses") {
  CHECK(cmv::check_flat(cmvtest::geometry("euclidean").curvature).status == cmv::Status::Holds);
  CHECK(cmv::check_flat(cmvtest::geometry("flat_contact", true).curvature).status ==
        cmv::Status::Holds);

  const cmv::Verdict v = cmv::check_flat(cmvtest::geometry("punctured").curvature);
  REQUIRE(v.status == cmv::Status::Refuted);
  REQUIRE(v.witness.has_value());
  // First nonzero component in (i, j, k, l) order: R(E1, E2) E2 along E3.
  CHECK(v.witness->indices == std::vector<std::size_t>{1, 2, 2, 3});
  CHECK(v.witness->value == E("4/x"));

  const cmv::Verdict h = cmv::check_flat(cmvtest::geometry("heisenberg").curvature);
  REQUIRE(h.witness.has_value());
  CHECK(h.witness->indices == std::vector<std::size_t>{1, 2, 1, 2});
  CHECK(h.witness->value == ScalarExpr(3));
}

TEST_CASE("constant curvature is refuted with a witness on non-space-forms") {
  const cmv::Geometry geo = cmvtest::geometry("heisenberg");
  const auto cc = cmv::check_constant_curvature(geo.curvature, geo.metric);
  CHECK(cc.verdict.status == cmv::Status::Refuted);
  CHECK(cc.verdict.witness.has_value());
  CHECK(cmv::check_locally_symmetric(geo.curvature).status == cmv::Status::Refuted);

  const cmv::Geometry flat = cmvtest::geometry("euclidean");
  const auto fc = cmv::check_constant_curvature(flat.curvature, flat.metric);
  CHECK(fc.verdict.holds());
  REQUIRE(fc.lambda.has_value());
  CHECK(fc.lambda->is_zero());
}

TEST_CASE("the 3D decomposition needs dimension 3") {
  const cmv::Geometry geo = cmvtest::geometry("heisenberg5");
  CHECK_THROWS_AS(cmv::check_3d_decomposition(geo.curvature, geo.ricci, geo.metric),
                  cmv::DimensionError);
  for (const char* name : {"punctured", "heisenberg", "darboux"}) {
    const cmv::Geometry g3 = cmvtest::geometry(name);
    CHECK(cmv::check_3d_decomposition(g3.curvature, g3.ricci, g3.metric).holds());
  }
}

TEST_CASE("non-orthonormal metric: Darboux frame") {
  const cmv::Geometry geo = cmvtest::geometry("darboux");
  CHECK(geo.connection.gamma(1, 0, 0) == E("-y"));
  CHECK(geo.connection.gamma(2, 0, 1) == E("y^2/2 - 1/2"));
  CHECK(geo.curvature.R(1, 0, 1, 0) == E("3/4 - y^2/4"));
  CHECK(geo.curvature.R(2, 0, 1, 1) == E("-y"));
  CHECK(geo.ricci.r == E("-1/2"));
  CHECK(geo.ricci.S(0, 2) == E("-y/2"));
}

TEST_CASE("invariants: engine identities on every corpus instance") {
  for (const char* name : kCorpus) {
    INFO(name);
    const cmv::Geometry geo = cmvtest::geometry(name);
    CHECK(cmv::check_jacobi(geo.brackets, geo.frame).holds());
    CHECK(cmv::check_metric_compatibility(geo.connection, geo.metric, geo.frame).holds());
    CHECK(cmv::check_torsion_free(geo.connection, geo.brackets).holds());
    CHECK(cmv::check_curvature_antisymmetry(geo.curvature).holds());
    CHECK(cmv::check_first_bianchi(geo.curvature).holds());
    CHECK(cmv::check_lowered_symmetries(geo.curvature, geo.metric).holds());
    CHECK(cmv::check_second_bianchi(geo.curvature).holds());

    // Ricci is symmetric and r is the trace of Q.
    ScalarExpr trace;
    for (std::size_t i = 0; i < geo.dim(); ++i) {
      trace += geo.ricci.Q(i, i);
      for (std::size_t j = 0; j < geo.dim(); ++j) CHECK(geo.ricci.S(i, j) == geo.ricci.S(j, i));
    }
    CHECK(trace == geo.ricci.r);
  }
}

TEST_CASE("invariants: a corrupted connection breaks torsion-freeness") {
  cmv::Geometry geo = cmvtest::geometry("heisenberg");
  geo.connection.gamma(0, 0, 1) += ScalarExpr(1);
  const cmv::Verdict v = cmv::check_torsion_free(geo.connection, geo.brackets);
  CHECK(v.status == cmv::Status::Refuted);
  CHECK(v.witness.has_value());
}
