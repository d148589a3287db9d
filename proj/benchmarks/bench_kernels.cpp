#include <benchmark/benchmark.h>

#include "chiral/fields.hpp"

using namespace chiral;

namespace {

const TestFunction& bump_f() {
  static TestFunction f = TestFunction::bump(-0.3, 1.0, 1.0, "f");
  return f;
}
const TestFunction& bump_g() {
  static TestFunction g = TestFunction::bump(0.4, 0.8, 1.0, "g");
  return g;
}

void BM_PairDelta(benchmark::State& state) {
  KernelExpr k(KernelTerm{KernelShape::delta(int(state.range(0))), ExactScalar(1), {}, {}});
  for (auto _ : state)
    benchmark::DoNotOptimize(pair2(k, bump_f().compact(), bump_g().compact()));
}
BENCHMARK(BM_PairDelta)->Arg(0)->Arg(1)->Arg(3);

void BM_PairFinitePart(benchmark::State& state) {
  KernelExpr k(
      KernelTerm{KernelShape::finite_part(int(state.range(0))), ExactScalar(1), {}, {}});
  for (auto _ : state)
    benchmark::DoNotOptimize(pair2(k, bump_f().compact(), bump_g().compact()));
}
BENCHMARK(BM_PairFinitePart)->Arg(1)->Arg(2)->Arg(4);

void BM_PairBoundaryIeps(benchmark::State& state) {
  KernelExpr k(
      KernelTerm{KernelShape::boundary(2, BoundarySide::PlusI0), ExactScalar(1), {}, {}});
  for (auto _ : state)
    benchmark::DoNotOptimize(pair2_ieps(k, bump_f().compact(), bump_g().compact()));
}
BENCHMARK(BM_PairBoundaryIeps);

}  // namespace
