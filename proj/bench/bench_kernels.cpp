// Serial reference vs OpenMP kernels on random point sets.
#include "l1disc/combinatorics.hpp"
#include "l1disc/kernels.hpp"
#include "l1disc/pointset.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace l1disc;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::parallel : Exec::serial; }

const PointSet& points_of_size(std::size_t n) {
  static std::map<std::size_t, PointSet> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, random_uniform(n, 7)).first;
  return it->second;
}

void BM_L1Cells(benchmark::State& state) {
  const PointSet& p = points_of_size(static_cast<std::size_t>(state.range(0)));
  const CellDecomposition cells = decompose(p);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::l1_cells(cells, p.size(), exec_of(state)));
}

void BM_L2Cells(benchmark::State& state) {
  const PointSet& p = points_of_size(static_cast<std::size_t>(state.range(0)));
  const CellDecomposition cells = decompose(p);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::l2_cells(cells, p.size(), exec_of(state)));
}

void BM_Warnock(benchmark::State& state) {
  const PointSet& p = points_of_size(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::warnock_pairs(p, exec_of(state)));
}

void BM_LinfCorners(benchmark::State& state) {
  const PointSet& p = points_of_size(static_cast<std::size_t>(state.range(0)));
  const CellDecomposition cells = decompose(p);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::linf_corners(cells, p.size(), exec_of(state)));
}

void BM_MonteCarlo(benchmark::State& state) {
  const PointSet& p = points_of_size(64);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        kernels::mc_discrepancy_moments(p, 1, static_cast<std::size_t>(state.range(0)), 1, exec_of(state)));
}

void BM_SignVectorSum(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::sign_vector_power_sum(static_cast<unsigned>(state.range(0)), 11, exec_of(state)));
}

void BM_FullTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(full_table(static_cast<unsigned>(state.range(0)), 11, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_L1Cells)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_L2Cells)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Warnock)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinfCorners)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo)->ArgsProduct({{100000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignVectorSum)->ArgsProduct({{16, 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullTable)->ArgsProduct({{10, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
