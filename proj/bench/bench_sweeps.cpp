// Serial twins against the OpenMP kernels on identical inputs.

#include <cmath>

#include <benchmark/benchmark.h>

#include "riso/sweeps.hpp"

using namespace riso::sweep;

namespace {

std::vector<double> lengths(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.01 * static_cast<double>(i);
  return out;
}

const std::vector<double> kLambdas{0.3, 0.7, 1.0, 1.2, std::sqrt(2.0), 3.0};

void BM_BoundTable(benchmark::State& st) {
  const auto ls = lengths(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(bound_table(kLambdas, 1.0, ls));
}
void BM_BoundTableSerial(benchmark::State& st) {
  const auto ls = lengths(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(bound_table_serial(kLambdas, 1.0, ls));
}

void BM_Sharpness(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sharpness_cells(kLambdas, 10));
}
void BM_SharpnessSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sharpness_cells_serial(kLambdas, 10));
}

void BM_Dominance(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(dominance_samples(1.2, static_cast<std::size_t>(st.range(0)), 8, 1));
}
void BM_DominanceSerial(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(dominance_samples_serial(1.2, static_cast<std::size_t>(st.range(0)), 8, 1));
}

void BM_LegendreClebsch(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lc_minimum(static_cast<std::size_t>(st.range(0)), 1));
}
void BM_LegendreClebschSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lc_minimum_serial(static_cast<std::size_t>(st.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_BoundTable)->Arg(20000)->UseRealTime();
BENCHMARK(BM_BoundTableSerial)->Arg(20000)->UseRealTime();
BENCHMARK(BM_Sharpness)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SharpnessSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Dominance)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DominanceSerial)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LegendreClebsch)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LegendreClebschSerial)->Arg(1000000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
