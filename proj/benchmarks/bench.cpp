#include <benchmark/benchmark.h>

#include "rectcover/boolmat.hpp"
#include "rectcover/covers.hpp"
#include "rectcover/exact.hpp"
#include "rectcover/greedy.hpp"
#include "rectcover/lp.hpp"

using namespace rectcover;

namespace {

void BM_MaximalRectangles(benchmark::State& state) {
  BooleanMatrix a = disjointness(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_maximal_rectangles(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MaximalRectangles)->DenseRange(4, 8)->Complexity();

void BM_AllRectangles(benchmark::State& state) {
  BooleanMatrix a = triangular(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_all_rectangles(a));
}
BENCHMARK(BM_AllRectangles)->DenseRange(8, 14)->RangeMultiplier(2);

void BM_GreedyBlockCover(benchmark::State& state) {
  unsigned k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(disjointness_block_cover(k, k / 3, k / 3));
}
BENCHMARK(BM_GreedyBlockCover)->DenseRange(6, 12)->Unit(benchmark::kMillisecond);

void BM_FullCover(benchmark::State& state) {
  unsigned k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(disjointness_full_cover(k));
}
BENCHMARK(BM_FullCover)->DenseRange(6, 11)->Unit(benchmark::kMillisecond);

void BM_CoverLp(benchmark::State& state) {
  BooleanMatrix a = triangular(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_cover_lp(a, true));
}
BENCHMARK(BM_CoverLp)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_ExactCover(benchmark::State& state) {
  BooleanMatrix a = triangular(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_or2(a));
}
BENCHMARK(BM_ExactCover)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_GreedyMatrixCover(benchmark::State& state) {
  BooleanMatrix a = disjointness(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_matrix_cover(a, true));
}
BENCHMARK(BM_GreedyMatrixCover)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
