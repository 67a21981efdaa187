#include <benchmark/benchmark.h>

#include "gct/kronecker.hpp"
#include "gct/polyspace.hpp"
#include "gct/signed_latin.hpp"
#include "gct/tableau.hpp"
#include "gct/tensor_invariants.hpp"

using namespace gct;

namespace {

void BM_GenericPowerSum(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0)), m = static_cast<int>(state.range(1));
  const SparseTensor v = form_to_tensor(named_form(NamedObject::power_sum(D, m)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_generic_invariant(D, m, v));
}
BENCHMARK(BM_GenericPowerSum)->Args({4, 3})->Args({4, 4})->Args({6, 2})->Unit(benchmark::kMillisecond);

void BM_GenericProduct(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const SparseTensor v = form_to_tensor(named_form(NamedObject::product(m)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_generic_invariant(m, m, v));
}
BENCHMARK(BM_GenericProduct)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_LatinSquares(benchmark::State& state) {
  LatinOptions opts;
  opts.symmetry_reduction = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(signed_latin_squares(static_cast<int>(state.range(0)), opts));
}
BENCHMARK(BM_LatinSquares)->Args({4, 0})->Args({4, 1})->Args({6, 1})->Unit(benchmark::kMillisecond);

void BM_LatinAnnuli(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(signed_latin_annuli(m, m + 1));
}
BENCHMARK(BM_LatinAnnuli)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LatinCubes2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(signed_latin_cubes(2));
}
BENCHMARK(BM_LatinCubes2)->Unit(benchmark::kMillisecond);

void BM_FnMatmul2(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(eval_Fn_matmul(2));
}
BENCHMARK(BM_FnMatmul2)->Unit(benchmark::kMillisecond);

void BM_FnUnit4(benchmark::State& state) {
  const SparseTensor w = named_tensor(NamedObject::unit_tensor(4));
  for (auto _ : state) benchmark::DoNotOptimize(eval_Fn(2, w));
}
BENCHMARK(BM_FnUnit4)->Unit(benchmark::kMillisecond);

void BM_KRect(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0)), delta = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(k_rect(m, delta));
}
BENCHMARK(BM_KRect)->Args({3, 8})->Args({3, 16})->Args({4, 5})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
