#include <benchmark/benchmark.h>

#include "homcert/fock.hpp"
#include "homcert/keyrate.hpp"
#include "homcert/leakage.hpp"

namespace {

void BM_PrwcpCoincidence(benchmark::State& state) {
  const homcert::fock::PrwcpPair pair(0.25, 0.5);
  const homcert::fock::Truncation trunc(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(homcert::fock::prwcp_coincidence(pair, trunc));
  }
}
BENCHMARK(BM_PrwcpCoincidence)->Arg(10)->Arg(20)->Arg(40);

void BM_PhaseAverageOracle(benchmark::State& state) {
  const homcert::fock::PrwcpPair pair(0.25, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        homcert::fock::prwcp_coincidence_phase_avg(pair, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_PhaseAverageOracle)->Arg(256)->Arg(2048);

void BM_NumericFidelity(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        homcert::leakage::numeric_fidelity(0.5, 0.47, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_NumericFidelity)->Arg(10)->Arg(20);

void BM_OptimizeKeyRate(benchmark::State& state) {
  const homcert::keyrate::ChannelModel model{};
  const homcert::keyrate::GridSpec grid{1.0, 1.0 / static_cast<double>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(homcert::keyrate::optimize_key_rate(50.0, model, 0.005, grid));
  }
}
BENCHMARK(BM_OptimizeKeyRate)->Arg(20)->Arg(50)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
