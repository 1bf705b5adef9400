// Serial reference against the OpenMP path for the two hot kernels.
#include <benchmark/benchmark.h>

#include "gwish/spherical.hpp"
#include "gwish/verify.hpp"

namespace {

using namespace gwish;

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_SampleSpectra(benchmark::State& state) {
  const SamplerSpec spec{AlphaSpec::general({0, 1, 2, 3, 4, 5, 6, 7}), FieldTag::Complex, Shape::Triangular};
  const RngStream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_spectra(spec, 2000, stream, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_SampleSpectra)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HaarQIntegral(benchmark::State& state) {
  const AlphaSpec alpha = AlphaSpec::general({2.3, 3.7, 1.6, 0.4});
  const std::vector<double> x{0.7, 1.9, 1.2, 2.4};
  const RngStream stream(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(haar_q_integral(alpha, x, FieldTag::Real, 20000, stream, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_HaarQIntegral)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
