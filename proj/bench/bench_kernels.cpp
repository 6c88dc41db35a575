#include <benchmark/benchmark.h>

#include "qgeom/algebra.hpp"
#include "qgeom/distributions.hpp"
#include "qgeom/kernels.hpp"
#include "qgeom/matrix.hpp"
#include "qgeom/random.hpp"

using namespace qgeom;

namespace {

void matmul(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const auto a = random_complex_matrix(n, rng);
  const auto b = random_complex_matrix(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b, exec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

void jordan_lie_suite(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  JordanLieOptions opts;
  opts.execution = exec;
  for (auto _ : state) benchmark::DoNotOptimize(verify_jordan_lie(n, 200, 0, 1e-9, opts).passed());
}

void involutivity_suite(benchmark::State& state, Execution exec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  InvolutivityOptions opts;
  opts.execution = exec;
  for (auto _ : state)
    benchmark::DoNotOptimize(involutivity_evidence(DistributionKind::One, n, 20, 0, opts).passed());
}

}  // namespace

BENCHMARK_CAPTURE(matmul, serial, Execution::serial)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(matmul, parallel, Execution::parallel)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_CAPTURE(jordan_lie_suite, serial, Execution::serial)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(jordan_lie_suite, parallel, Execution::parallel)->Arg(4)->Arg(16);
BENCHMARK_CAPTURE(involutivity_suite, serial, Execution::serial)->Arg(3)->Arg(5);
BENCHMARK_CAPTURE(involutivity_suite, parallel, Execution::parallel)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
