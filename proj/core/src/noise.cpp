#include "heatcp/noise.hpp"

#include <cmath>
#include <numbers>

#include "heatcp/rng.hpp"

namespace heatcp::detail {

void fill_mode_noise(std::uint64_t seed, std::uint32_t mode, std::int64_t j0,
                     int count, double* z1, double* z2) {
  constexpr int kChunk = 512;
  double u0[kChunk], u1[kChunk];
  int done = 0;
  while (done < count) {
    const int m = count - done > kChunk ? kChunk : count - done;
    for (int i = 0; i < m; ++i) {
      const std::uint64_t j = static_cast<std::uint64_t>(j0 + done + i);
      const auto blk = Philox4x32::generate(
          seed, static_cast<std::uint32_t>(j),
          static_cast<std::uint32_t>(j >> 32), mode,
          static_cast<std::uint32_t>(NoiseStream::kSpdeModes) << 24);
      u0[i] = uniform_from_bits((static_cast<std::uint64_t>(blk.v[0]) << 32) |
                                blk.v[1]);
      u1[i] = uniform_from_bits((static_cast<std::uint64_t>(blk.v[2]) << 32) |
                                blk.v[3]);
    }
#pragma omp simd
    for (int i = 0; i < m; ++i) {
      u0[i] = std::sqrt(-2.0 * std::log(u0[i]));
      u1[i] = 2.0 * std::numbers::pi * u1[i];
    }
    // separate loops so each call vectorizes instead of folding to sincos
#pragma omp simd
    for (int i = 0; i < m; ++i) {
      z1[done + i] = u0[i] * std::cos(u1[i]);
    }
#pragma omp simd
    for (int i = 0; i < m; ++i) {
      z2[done + i] = u0[i] * std::sin(u1[i]);
    }
    done += m;
  }
}

}  // namespace heatcp::detail
