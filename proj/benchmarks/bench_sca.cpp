#include <benchmark/benchmark.h>

#include "urllc/harness/scheme.hpp"
#include "urllc/radio/channels.hpp"

using namespace urllc;

namespace {

// One full scheme pipeline per iteration on a fixed realization.
void BM_Scheme(benchmark::State& state) {
  const auto scheme = static_cast<harness::SchemeId>(state.range(0));
  SystemConfig cfg;
  const auto real = radio::make_realization(cfg, 1);
  int successes = 0;
  for (auto _ : state) {
    const auto out = harness::run_scheme(real.channels, cfg, scheme, 1);
    successes = out.outcome.success_count;
    benchmark::DoNotOptimize(successes);
  }
  state.SetLabel(std::string(harness::scheme_name(scheme)));
  state.counters["successes"] = successes;
}

void BM_Realization(benchmark::State& state) {
  SystemConfig cfg;
  std::uint64_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(radio::make_realization(cfg, trial++));
}

}  // namespace

BENCHMARK(BM_Scheme)->DenseRange(0, 6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Realization)->Unit(benchmark::kMicrosecond);
