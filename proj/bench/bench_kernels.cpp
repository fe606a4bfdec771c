// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "crossratio/spectrum.hpp"
#include "crossratio/verify.hpp"

using namespace crossratio;

namespace {

const ChartPoint kZ({QuadExt(2), QuadExt(1, 1, 5)});

void BM_Prop24(benchmark::State& state) {
  PAClass g = PAClass::from_word("R L"), h = PAClass::from_word("L R");
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prop24_table(g, h, n));
}

void BM_Prop24Serial(benchmark::State& state) {
  PAClass g = PAClass::from_word("R L"), h = PAClass::from_word("L R");
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prop24_table_serial(g, h, n));
}

void BM_Forlarge(benchmark::State& state) {
  PAClass g = PAClass::from_word("R L");
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forlarge_table(g, kZ, n));
}

void BM_ForlargeSerial(benchmark::State& state) {
  PAClass g = PAClass::from_word("R L");
  auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(forlarge_table_serial(g, kZ, n));
}

void BM_Enumerate(benchmark::State& state) {
  auto r = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_lengths(torus_generators(), r));
}

void BM_EnumerateSerial(benchmark::State& state) {
  auto r = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_lengths_serial(torus_generators(), r));
}

std::vector<Length> three_lengths() {
  return {Length::of_stretch(QuadExt(Rational(3, 2), Rational(1, 2), 5)), Length::of_stretch(QuadExt(3, 2, 2)),
          Length::of_stretch(QuadExt(2, 1, 3))};
}

void BM_Gap(benchmark::State& state) {
  auto ls = three_lengths();
  for (auto _ : state) benchmark::DoNotOptimize(gap_statistic(ls, state.range(0)));
}

void BM_GapSerial(benchmark::State& state) {
  auto ls = three_lengths();
  for (auto _ : state) benchmark::DoNotOptimize(gap_statistic_serial(ls, state.range(0)));
}

}  // namespace

BENCHMARK(BM_Prop24)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Prop24Serial)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Forlarge)->Arg(12)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForlargeSerial)->Arg(12)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Enumerate)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gap)->Arg(20)->Arg(49)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapSerial)->Arg(20)->Arg(49)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
