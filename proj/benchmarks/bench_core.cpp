#include <benchmark/benchmark.h>

#include "nclass/canonical.hpp"
#include "nclass/measures.hpp"
#include "nclass/pfunc.hpp"
#include "nclass/sampler.hpp"

namespace {

nclass::SamplerConfig bench_config() {
  nclass::SamplerConfig config;
  config.seed = 1234;
  config.count = 1 << 20;
  config.max_squeeze = 1.0;
  config.max_thermal = 1.5;
  config.mix_passive = true;
  return config;
}

void BM_SampleState(benchmark::State& state) {
  const auto config = bench_config();
  std::int64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nclass::sample_state(config, i++ % config.count));
  }
}
BENCHMARK(BM_SampleState);

void BM_Canonicalize(benchmark::State& state) {
  const auto config = bench_config();
  std::int64_t i = 0;
  for (auto _ : state) {
    const auto sigma = nclass::sample_state(config, i++ % config.count);
    benchmark::DoNotOptimize(nclass::canonical::canonicalize(sigma));
  }
}
BENCHMARK(BM_Canonicalize);

void BM_MeasureAll(benchmark::State& state) {
  const auto config = bench_config();
  std::int64_t i = 0;
  for (auto _ : state) {
    const auto sigma = nclass::sample_state(config, i++ % config.count);
    const auto moments =
        nclass::canonical::reduce_to_standard_form(sigma).first;
    benchmark::DoNotOptimize(nclass::measures::measure_all(moments));
  }
}
BENCHMARK(BM_MeasureAll);

void BM_PfuncScanRow(benchmark::State& state) {
  const nclass::pfunc::MixtureParams params{{2.0, 0.0}, 0.25};
  for (auto _ : state) {
    double acc = 0.0;
    for (int j = 0; j < 161; ++j)
      acc += nclass::pfunc::p_full(params, {2.0, 0.0}, {-4.0 + 0.05 * j, 0.0});
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_PfuncScanRow);

void BM_SmoothedDepth(benchmark::State& state) {
  const nclass::pfunc::MixtureParams params{{2.0, 0.0}, 0.25};
  for (auto _ : state) {
    benchmark::DoNotOptimize(nclass::pfunc::depth_of_mixture(params));
  }
}
BENCHMARK(BM_SmoothedDepth);

}  // namespace

BENCHMARK_MAIN();
