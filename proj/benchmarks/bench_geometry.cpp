#include <benchmark/benchmark.h>

#include "chiral/geometry.hpp"

using namespace chiral;

namespace {

void BM_NullProjectCurved(benchmark::State& state) {
  auto mink = Spacetime::minkowski();
  CauchySurface surf(mink, SmoothFn::sine_perturbed_identity(0.3, 1.0));
  double v = 0.0;
  for (auto _ : state) {
    v += 1e-6;
    benchmark::DoNotOptimize(surf.null_project({-1.0, 2.0 + std::sin(v)}, Side::Right));
  }
}
BENCHMARK(BM_NullProjectCurved);

void BM_DilationMargin(benchmark::State& state) {
  SmoothFn t = SmoothFn::gaussian(0.0, std::sqrt(0.5));
  for (auto _ : state) {
    double worst = 1e300;
    for (int i = 0; i < int(state.range(0)); ++i) {
      double x = -6.0 + 12.0 * i / double(state.range(0) - 1);
      worst = std::min(worst, dilation_margin(t, t, t, x));
    }
    benchmark::DoNotOptimize(worst);
  }
}
BENCHMARK(BM_DilationMargin)->Arg(256)->Arg(2001);

}  // namespace
