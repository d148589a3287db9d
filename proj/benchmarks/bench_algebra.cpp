#include <benchmark/benchmark.h>

#include "chiral/algebra.hpp"

using namespace chiral;

namespace {

struct Fx {
  SpacetimePtr mink = Spacetime::minkowski();
  CauchySurface sigma0;
  HadamardChiralKernel W;
  Fx() : sigma0(CauchySurface::sigma0(mink)), W{sigma0} {}
};

Fx& fx() {
  static Fx f;
  return f;
}

void BM_StarTT(benchmark::State& state) {
  Observable T1 = smear(fx().sigma0, stress_tensor_field(),
                        TestFunction::bump(-0.3, 1.0, 1.0, "f"));
  Observable T2 = smear(fx().sigma0, stress_tensor_field(),
                        TestFunction::bump(0.4, 0.8, 1.0, "g"));
  for (auto _ : state)
    benchmark::DoNotOptimize(star_product(T1, T2, fx().W, int(state.range(0))));
}
BENCHMARK(BM_StarTT)->Arg(2)->Arg(4);

void BM_CommutatorPsi4(benchmark::State& state) {
  Observable A =
      smear(fx().sigma0, LocalField{4, ExactScalar(1)}, TestFunction::bump(-0.3, 1.0, 1.0, "f"));
  Observable B =
      smear(fx().sigma0, LocalField{4, ExactScalar(1)}, TestFunction::bump(0.4, 0.8, 1.0, "g"));
  for (auto _ : state)
    benchmark::DoNotOptimize(commutator(A, B, fx().W, 4));
}
BENCHMARK(BM_CommutatorPsi4);

void BM_OpeTT(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        ope_extract(stress_tensor_field(), stress_tensor_field(), fx().W));
}
BENCHMARK(BM_OpeTT);

void BM_StateEvalTT(benchmark::State& state) {
  Observable T1 = smear(fx().sigma0, stress_tensor_field(),
                        TestFunction::bump(-0.3, 1.0, 1.0, "f"));
  Observable T2 = smear(fx().sigma0, stress_tensor_field(),
                        TestFunction::bump(0.4, 0.8, 1.0, "g"));
  ObservableSeries s = star_product(T1, T2, fx().W, 4);
  ChiralConfiguration psi{SmoothFn::sine(0.7, 1.1, 0.3) + SmoothFn::constant(0.4), false};
  GaussianState st{fx().W, psi};
  for (auto _ : state) benchmark::DoNotOptimize(st(s));
}
BENCHMARK(BM_StateEvalTT);

}  // namespace
