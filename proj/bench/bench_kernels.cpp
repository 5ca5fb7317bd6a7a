#include <benchmark/benchmark.h>

#include <vector>

#include "dtqw/kernels.hpp"

namespace {

using namespace dtqw;

// 2^20 amplitudes on twenty qubits; the gate touches wire 10 under two controls.
struct Fixture {
  std::vector<int> dims = std::vector<int>(20, 2);
  std::vector<Complex> amps = std::vector<Complex>(std::size_t{1} << 20, Complex(0.5, -0.25));
};

void run(benchmark::State& state, const GateApplication& gate, bool parallel) {
  Fixture f;
  const kernels::GatePlan plan = kernels::plan_gate(f.dims, gate);
  for (auto _ : state) {
    if (parallel)
      kernels::apply_parallel(f.amps, plan);
    else
      kernels::apply_serial(f.amps, plan);
    benchmark::DoNotOptimize(f.amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.amps.size()));
}

const GateApplication kHadamard{Hadamard{}, 10, {}};
const GateApplication kToffoli{PauliX{}, 10, {{3, 1}, {17, 1}}};

void BM_HadamardSerial(benchmark::State& s) { run(s, kHadamard, false); }
void BM_HadamardParallel(benchmark::State& s) { run(s, kHadamard, true); }
void BM_ToffoliSerial(benchmark::State& s) { run(s, kToffoli, false); }
void BM_ToffoliParallel(benchmark::State& s) { run(s, kToffoli, true); }

}  // namespace

BENCHMARK(BM_HadamardSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HadamardParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ToffoliSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ToffoliParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
