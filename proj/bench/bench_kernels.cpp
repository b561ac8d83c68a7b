#include <benchmark/benchmark.h>

#include "covjet/covariant.hpp"
#include "covjet/fractional.hpp"
#include "covjet/random_scene.hpp"

using namespace covjet;

namespace {

struct Fixture {
  Scene scene;
  TensorFieldJet field;
  PQTable p, q;
};

Fixture make_fixture(int dim, int order, int k) {
  SceneRng rng(2024);
  Scene s = random_scene(rng, {.dim = dim, .order = order});
  TensorFieldJet a = random_field(rng, 2, 2, dim, order, s.base_point);
  PQTable p = build_table(s, SymbolKind::P, k), q = build_table(s, SymbolKind::Q, k);
  return {std::move(s), std::move(a), std::move(p), std::move(q)};
}

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::serial : Exec::parallel; }

void BM_SymbolTable(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  SceneRng rng(7);
  const Scene s = random_scene(rng, {.dim = dim, .order = 12});
  for (auto _ : state) benchmark::DoNotOptimize(build_table(s, SymbolKind::P, 12, exec_of(state)));
}

void BM_ClosedFormula(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const Fixture fx = make_fixture(dim, 8, 4);
  for (auto _ : state) benchmark::DoNotOptimize(covariant_derivative_k(fx.field, fx.p, fx.q, 4, exec_of(state)));
}

void BM_FractionalSum(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const Fixture fx = make_fixture(dim, 8, 6);
  const TensorSeries a = to_series(fx.field);
  for (auto _ : state)
    benchmark::DoNotOptimize(frac_covariant(a, fx.p, fx.q, Scalar::from_int(-1, Backend::rational), 6, exec_of(state)));
}

}  // namespace

// Second argument: 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_SymbolTable)->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedFormula)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FractionalSum)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
