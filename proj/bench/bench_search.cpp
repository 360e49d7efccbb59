// Serial vs OpenMP kernels of the collision search.

#include <benchmark/benchmark.h>

#include "ksumlab/search.hpp"
#include "ksumlab/search_kernels.hpp"

using namespace ksumlab;

namespace {

const std::vector<kernels::IntMultiset>& symmetric_12_4() {
  static const auto candidates = enumerate_candidate_ints({12, 4, 8, true, true});
  return candidates;
}

const std::vector<kernels::IntMultiset>& general_8_3() {
  static const auto candidates = enumerate_candidate_ints({8, 3, 6, false, true});
  return candidates;
}

void BM_KeysSerial(benchmark::State& state) {
  const auto& c = state.range(0) == 0 ? symmetric_12_4() : general_8_3();
  const unsigned k = state.range(0) == 0 ? 4 : 3;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::keys_serial(c, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}

void BM_KeysParallel(benchmark::State& state) {
  const auto& c = state.range(0) == 0 ? symmetric_12_4() : general_8_3();
  const unsigned k = state.range(0) == 0 ? 4 : 3;
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::keys_parallel(c, k, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}

void BM_PrekeysParallel(benchmark::State& state) {
  const auto& c = state.range(0) == 0 ? symmetric_12_4() : general_8_3();
  const unsigned k = state.range(0) == 0 ? 4 : 3;
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::prekeys_parallel(c, k, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()));
}

void BM_FindCollisionsSerial(benchmark::State& state) {
  const SearchSpec spec{12, 4, 8, true, true};
  for (auto _ : state) benchmark::DoNotOptimize(find_collisions_serial(spec));
}

void BM_FindCollisionsParallel(benchmark::State& state) {
  const SearchSpec spec{12, 4, 8, true, true};
  SearchOptions options;
  options.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_collisions(spec, options));
}

}  // namespace

BENCHMARK(BM_KeysSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KeysParallel)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PrekeysParallel)->ArgsProduct({{0, 1}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FindCollisionsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindCollisionsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
