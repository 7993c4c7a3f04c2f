#include <benchmark/benchmark.h>

#include "heatcp/estimators.hpp"
#include "heatcp/limit_law.hpp"
#include "heatcp/rng.hpp"

namespace {

heatcp::BlockFunctionals synthetic_funcs(int n) {
  heatcp::DiffusivityProfile p(1.0, 2.0, 0.35, 0.5, 4.0);
  heatcp::MeasurementGrid grid(n);
  heatcp::BlockFunctionals f{
      n,  grid.delta(), 1.0, grid.k_bullet(p), p, {}, {}, {}, std::nullopt};
  f.A.resize(n);
  f.B.resize(n);
  f.B_left.resize(n);
  for (int i = 0; i < n; ++i) {
    const double theta = grid.site(i + 1) < 0.35 ? 1.0 : 2.0;
    f.B[i] = 700.0 + 10.0 * heatcp::uniform_from_bits(heatcp::splitmix64(i));
    f.B_left[i] = f.B[i];
    f.A[i] = theta * f.B[i] +
             30.0 * (heatcp::uniform_from_bits(heatcp::splitmix64(i + 77)) - 0.5);
  }
  return f;
}

void BM_EstimateSimultaneous(benchmark::State& state) {
  auto f = synthetic_funcs(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto est = heatcp::estimate_simultaneous(f, 0.5, 4.0);
    benchmark::DoNotOptimize(est.k_hat);
  }
}
BENCHMARK(BM_EstimateSimultaneous)->Arg(50)->Arg(200);

void BM_ArgminSampler(benchmark::State& state) {
  heatcp::ArgminLawConfig cfg;
  cfg.half_width = 25.0;
  cfg.step = 0.02;
  cfg.replicates = state.range(0);
  cfg.seed = 1;
  for (auto _ : state) {
    auto s = heatcp::sample_argmin(cfg);
    benchmark::DoNotOptimize(s[0]);
  }
}
BENCHMARK(BM_ArgminSampler)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
