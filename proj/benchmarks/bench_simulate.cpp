#include <benchmark/benchmark.h>

#include "heatcp/functionals.hpp"
#include "heatcp/noise.hpp"
#include "heatcp/simulate.hpp"

namespace {

void BM_ModeNoise(benchmark::State& state) {
  std::vector<double> z1(384), z2(384);
  std::int64_t j = 1;
  for (auto _ : state) {
    heatcp::detail::fill_mode_noise(9, 3, j, 384, z1.data(), z2.data());
    benchmark::DoNotOptimize(z1[0]);
    j += 384;
  }
  state.SetItemsProcessed(state.iterations() * 384);
}
BENCHMARK(BM_ModeNoise);

void BM_SimulateFunctionals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  heatcp::DiffusivityProfile p(1.0, 2.0, 0.35, 0.5, 4.0);
  heatcp::MeasurementGrid grid(n);
  auto kernel = heatcp::MeasurementKernel::polynomial();
  auto decomp = heatcp::decompose(p, 10 * n);
  auto coeffs = heatcp::build_observation_coeffs(decomp, kernel, grid);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    heatcp::SimulationConfig cfg;
    cfg.horizon = 1.0;
    cfg.time_steps = 4 * static_cast<std::int64_t>(n) * n;
    cfg.mode_count = 10 * n;
    cfg.seed = ++seed;
    cfg.n = n;
    auto f = heatcp::simulate_functionals(cfg, p, coeffs);
    benchmark::DoNotOptimize(f.A[0]);
  }
}
BENCHMARK(BM_SimulateFunctionals)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
