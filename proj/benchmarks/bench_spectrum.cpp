#include <benchmark/benchmark.h>

#include "heatcp/fem.hpp"
#include "heatcp/kernel.hpp"
#include "heatcp/spectrum.hpp"

namespace {

void BM_Decompose(benchmark::State& state) {
  heatcp::DiffusivityProfile p(1.0, 4.0, 0.5, 0.5, 4.0);
  const int modes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto d = heatcp::decompose(p, modes);
    benchmark::DoNotOptimize(d.eigenvalue(modes));
  }
}
BENCHMARK(BM_Decompose)->Arg(128)->Arg(1024)->Arg(4096);

void BM_FemOracle(benchmark::State& state) {
  heatcp::DiffusivityProfile p(1.0, 4.0, 0.5, 0.5, 4.0);
  for (auto _ : state) {
    auto f = heatcp::fem_oracle(p, 10000, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(f.eigenvalue(1));
  }
}
BENCHMARK(BM_FemOracle)->Arg(10)->Arg(50);

void BM_KernelCoeffs(benchmark::State& state) {
  heatcp::DiffusivityProfile p(1.0, 2.0, 0.35, 0.5, 4.0);
  const int n = static_cast<int>(state.range(0));
  heatcp::MeasurementGrid grid(n);
  auto kernel = heatcp::MeasurementKernel::polynomial();
  auto d = heatcp::decompose(p, 10 * n);
  for (auto _ : state) {
    auto c = heatcp::kernel_eigen_coeffs(d, kernel, grid, n / 2);
    benchmark::DoNotOptimize(c.a.back());
  }
}
BENCHMARK(BM_KernelCoeffs)->Arg(20)->Arg(100);

}  // namespace
