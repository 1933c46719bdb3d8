// Parallel kernels against their serial references.

#include "fixtures.hpp"

#include <benchmark/benchmark.h>

using namespace deforma;
using namespace fixtures;

namespace {

const Truncation kTable{3, 5, 0};

void BM_Construction(benchmark::State& state) {
  auto p = builtin_presentation("assoc");
  bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    ConvolutionAlgebra conv(p, flat(2), kTable, {parallel, true});
    benchmark::DoNotOptimize(conv.dim());
  }
}
BENCHMARK(BM_Construction)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BracketTable(benchmark::State& state) {
  ConvolutionAlgebra conv(builtin_presentation("assoc"), flat(2), kTable, {true, false});
  bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(conv.bracket_table(parallel).size());
}
BENCHMARK(BM_BracketTable)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TwistedCohomology(benchmark::State& state) {
  ConvolutionAlgebra conv(builtin_presentation("assoc"), flat(2), Truncation{4, 6, 0}, {true, false});
  auto phi = conv.from_generator_values({binary_tensor(dual_numbers_dense(), conv.endo())});
  for (auto _ : state) benchmark::DoNotOptimize(moduli_homotopy_groups(conv, phi, -3, 3).pi.size());
}
BENCHMARK(BM_TwistedCohomology)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
