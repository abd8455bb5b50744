#include <benchmark/benchmark.h>

#include <random>

#include "heteroedge/compression.hpp"
#include "heteroedge/fit.hpp"
#include "heteroedge/profile_csv.hpp"
#include "heteroedge/runtime/scenario.hpp"
#include "heteroedge/serialize.hpp"
#include "heteroedge/solver.hpp"

using namespace heteroedge;

namespace {

std::vector<ProfileSample> profile() {
  static const auto samples = load_profile_csv(HETEROEDGE_DATA_DIR "/profile_testbed.csv");
  return samples;
}

ConstraintSet caps() {
  ConstraintSet c;
  c.tau_s = 68.34;
  c.k_devices = 2;
  c.p_max_w = 15;
  c.s_max_hz = 1e9;
  c.w_max_aux_w = 7;
  c.w_max_pri_w = 7;
  c.m_max_aux_pct = 65;
  c.m_max_pri_pct = 65;
  c.beta_s = 5;
  return c;
}

void BM_BuildCostCurves(benchmark::State& state) {
  const auto samples = profile();
  for (auto _ : state) benchmark::DoNotOptimize(build_cost_curves(samples));
}
BENCHMARK(BM_BuildCostCurves);

void BM_Solve(benchmark::State& state) {
  const CostCurves curves = build_cost_curves(profile());
  const ConstraintSet c = caps();
  for (auto _ : state) benchmark::DoNotOptimize(solve(Objective{curves}, c, curves));
}
BENCHMARK(BM_Solve);

void BM_ObjectiveEval(benchmark::State& state) {
  const CostCurves curves = build_cost_curves(profile());
  const Objective obj{curves};
  double r = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective_value(obj, r));
    r = r >= 0.999 ? 0.001 : r + 0.001;
  }
}
BENCHMARK(BM_ObjectiveEval);

void BM_RleEncode(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::uint8_t> buf;
  std::uniform_int_distribution<int> byte(0, 255), run(1, 64);
  while (buf.size() < 65536)
    buf.insert(buf.end(), static_cast<std::size_t>(run(rng)),
               static_cast<std::uint8_t>(byte(rng)));
  for (auto _ : state) benchmark::DoNotOptimize(rle_encode(buf));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * buf.size()));
}
BENCHMARK(BM_RleEncode);

void BM_RleDecode(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<std::uint8_t> buf;
  std::uniform_int_distribution<int> byte(0, 255), run(1, 64);
  while (buf.size() < 65536)
    buf.insert(buf.end(), static_cast<std::size_t>(run(rng)),
               static_cast<std::uint8_t>(byte(rng)));
  const auto payload = rle_encode(buf);
  for (auto _ : state) benchmark::DoNotOptimize(rle_decode(payload));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * buf.size()));
}
BENCHMARK(BM_RleDecode);

void BM_StaticScenario(benchmark::State& state) {
  const auto cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_static.json");
  for (auto _ : state) benchmark::DoNotOptimize(runtime::run_scenario(cfg));
}
BENCHMARK(BM_StaticScenario);

}  // namespace

BENCHMARK_MAIN();
