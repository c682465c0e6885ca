#include <memory>

#include <benchmark/benchmark.h>

#include "qsum/cohomology.hpp"
#include "qsum/coloring.hpp"
#include "qsum/ring.hpp"

using namespace qsum;

namespace {

std::shared_ptr<const Quandle> data_quandle(const char* name) {
  static const std::filesystem::path dir = QSUM_DATA_DIR;
  return std::make_shared<const Quandle>(load_quandle(dir / "quandles" / name));
}

void BM_IdempotentScan(benchmark::State& state, const char* name) {
  const auto q = data_quandle(name);
  ScanOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_idempotents(q, 2, opts).elements.size());
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << q->order()));
}
BENCHMARK_CAPTURE(BM_IdempotentScan, C12_3, "C12_3.quandle")->Arg(1)->Arg(2);
BENCHMARK_CAPTURE(BM_IdempotentScan, C16_3, "C16_3.quandle")->Arg(1)->Unit(benchmark::kMillisecond);

void BM_IdempotentScanY(benchmark::State& state) {
  const auto q = data_quandle("I_C12_3.quandle");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_idempotents(q, 2).elements.size());
}
BENCHMARK(BM_IdempotentScanY)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_Colorings(benchmark::State& state) {
  const auto q = data_quandle("C13_4.quandle");
  const auto w = BraidWord::make(4, {1, -2, 3, -2, 1, 3, -2, 1, -2, 3});
  SolverOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_colorings(*q, w, opts).colorings);
}
BENCHMARK(BM_Colorings)->Arg(1)->Arg(2);

void BM_StateSum(benchmark::State& state) {
  const auto q = data_quandle("C12_3.dual.quandle");
  const auto phi = load_cocycle(std::filesystem::path(QSUM_DATA_DIR) / "cocycles/phi_C12_3.cocycle");
  const auto w = BraidWord::make(4, {1, -2, 3, -2, 1, 3, -2, 1, -2, 3});
  for (auto _ : state) benchmark::DoNotOptimize(state_sum(*q, phi, w).total());
}
BENCHMARK(BM_StateSum);

void BM_CocycleSpace(benchmark::State& state, const char* name, unsigned p) {
  const auto q = data_quandle(name);
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_space(*q, p).dim());
}
BENCHMARK_CAPTURE(BM_CocycleSpace, C12_3_p2, "C12_3.quandle", 2U);
BENCHMARK_CAPTURE(BM_CocycleSpace, Y_p2, "I_C12_3.quandle", 2U)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CocycleSpace, C13_4_p3, "C13_4.quandle", 3U);

void BM_NearestCocycle(benchmark::State& state) {
  const auto q = data_quandle("C12_3.dual.quandle");
  const auto phi = load_cocycle(std::filesystem::path(QSUM_DATA_DIR) / "cocycles/phi_C12_3.printed.cocycle");
  for (auto _ : state) benchmark::DoNotOptimize(nearest_cocycle(*q, phi).distance);
}
BENCHMARK(BM_NearestCocycle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
