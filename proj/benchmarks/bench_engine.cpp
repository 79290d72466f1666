#include <benchmark/benchmark.h>

#include <filesystem>

#include "climsim/energy_market.hpp"
#include "climsim/engine.hpp"
#include "climsim/scenario.hpp"

using namespace climsim;

namespace {

const std::filesystem::path kData = std::filesystem::path(CLIMSIM_SOURCE_DIR) / "data";

const Calibration& cal() {
  static const Calibration c = load_calibration(kData);
  return c;
}

void BM_FullRun(benchmark::State& state, const char* preset) {
  const auto spec = load_preset(preset, kData);
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(spec, cal()));
}
BENCHMARK_CAPTURE(BM_FullRun, baseline, "baseline")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FullRun, heavy_government, "heavy_government")->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& state) {
  const auto spec = load_preset("baseline", kData);
  const auto s0 = build_initial_state(spec, cal());
  for (auto _ : state) benchmark::DoNotOptimize(step_once(s0, spec, cal()));
}
BENCHMARK(BM_Step);

void BM_Softmax(benchmark::State& state) {
  std::vector<double> costs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < costs.size(); ++i) costs[i] = 5.0 + 3.0 * static_cast<double>(i);
  for (auto _ : state) benchmark::DoNotOptimize(energy::softmax_shares(costs, 0.2));
}
BENCHMARK(BM_Softmax)->Arg(7)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
