#include <benchmark/benchmark.h>

#include "sepack/bounds.hpp"
#include "sepack/constructions.hpp"
#include "sepack/enumeration.hpp"
#include "sepack/separability.hpp"

using namespace sepack;

static void BM_IsTsPolyomino(benchmark::State& state) {
  const PackingInstance p = basic_polyomino(static_cast<int>(state.range(0))).to_packing();
  for (auto _ : state) benchmark::DoNotOptimize(is_ts(p));
}
BENCHMARK(BM_IsTsPolyomino)->Arg(9)->Arg(16)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_IsLsPentagon(benchmark::State& state) {
  const PackingInstance p = pentagon_augmented(basic_polyomino(11), {2, 1});
  const ContactGraph g = contact_graph(p);
  for (auto _ : state) benchmark::DoNotOptimize(is_ls(p, g));
}
BENCHMARK(BM_IsLsPentagon)->Unit(benchmark::kMicrosecond);

static void BM_MaxContactLattice(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(max_contact_lattice(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MaxContactLattice)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);

static void BM_RogersSigma(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rogers_sigma(d, 100'000, 1));
}
BENCHMARK(BM_RogersSigma)->Arg(2)->Arg(3)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_CapMeasure(benchmark::State& state) {
  const CapSpec cap{static_cast<int>(state.range(0)), 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(cap_surface_measure(cap));
}
BENCHMARK(BM_CapMeasure)->Arg(3)->Arg(10)->Arg(24);

static void BM_Classify(benchmark::State& state) {
  const PackingInstance p = basic_polyomino(static_cast<int>(state.range(0))).to_packing();
  for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_Classify)->Arg(12)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
