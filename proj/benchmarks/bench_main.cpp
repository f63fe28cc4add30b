#include "cmv/expr_parser.hpp"
#include "cmv/geometry.hpp"
#include "cmv/polynomial.hpp"

#include <benchmark/benchmark.h>

namespace {

cmv::Polynomial parse_poly(const char* text) {
  static const cmv::Chart chart({"x", "y", "z"});
  return cmv::parse_scalar(text, chart).numerator();
}

void BM_PolynomialGcd(benchmark::State& state) {
  const auto g = parse_poly("x^3*y - 2*x*z^2 + y^2*z + 7");
  const auto a = g * parse_poly("x^2 + y*z - 3*x + 1");
  const auto b = g * parse_poly("y^3 - x*z + 2*z^2 - 5");
  for (auto _ : state) benchmark::DoNotOptimize(cmv::gcd(a, b));
}
BENCHMARK(BM_PolynomialGcd);

const char* kExample = R"(name bench
dim 3
coords x y z
frame E1 = [0, 2/x, 0]
frame E2 = [2, -4*z/x, x*y]
frame E3 = [0, 0, 1]
metric orthonormal
xi E3
phi E1 = E2
phi E2 = -E1
phi E3 = 0
)";

void BM_ConnectionCurvature(benchmark::State& state) {
  const cmv::ManifoldSpec spec = cmv::parse_spec(kExample);
  for (auto _ : state) {
    cmv::Frame frame(spec);
    const auto c = cmv::structure_coeffs(frame);
    const auto metric = cmv::MetricFrame::from(spec.metric);
    const auto conn = cmv::koszul_connection(frame, c, metric);
    benchmark::DoNotOptimize(cmv::curvature_tensor(conn, c, frame));
  }
}
BENCHMARK(BM_ConnectionCurvature)->Unit(benchmark::kMillisecond);

void BM_FullGeometry(benchmark::State& state) {
  const cmv::ManifoldSpec spec = cmv::parse_spec(kExample);
  for (auto _ : state) benchmark::DoNotOptimize(cmv::Geometry::compute(spec));
}
BENCHMARK(BM_FullGeometry)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
