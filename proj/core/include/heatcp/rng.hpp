#ifndef HEATCP_RNG_HPP
#define HEATCP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace heatcp {

// Counter-based generator (Philox-4x32-10).  Every draw is a pure function
// of (key, counter), so streams indexed by (seed, mode, step) are
// reproducible under any parallel schedule and never overlap.
struct Philox4x32 {
  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  struct Block {
    std::uint32_t v[4];
  };

  static Block generate(std::uint64_t key, std::uint32_t c0, std::uint32_t c1,
                        std::uint32_t c2, std::uint32_t c3) {
    std::uint32_t x0 = c0, x1 = c1, x2 = c2, x3 = c3;
    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * x0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * x2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t y0 = hi1 ^ x1 ^ k0;
      const std::uint32_t y1 = lo1;
      const std::uint32_t y2 = hi0 ^ x3 ^ k1;
      const std::uint32_t y3 = lo0;
      x0 = y0;
      x1 = y1;
      x2 = y2;
      x3 = y3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    return Block{{x0, x1, x2, x3}};
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derived stream seed for replicate r of a run at resolution n.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n,
                                 std::uint64_t replicate) {
  return splitmix64(splitmix64(master ^ splitmix64(n)) ^
                    splitmix64(replicate + 0x51ED2701ull));
}

// Maps a uint64 to (0,1); never returns 0 or 1 (1 - 2^-53 is the largest
// value, exactly representable, so the rounding cannot reach 1).
inline double uniform_from_bits(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Two independent standard normals from one counter block (Box-Muller).
inline std::pair<double, double> normal_pair(std::uint64_t key,
                                             std::uint32_t c0,
                                             std::uint32_t c1,
                                             std::uint32_t c2,
                                             std::uint32_t c3) {
  const auto blk = Philox4x32::generate(key, c0, c1, c2, c3);
  const std::uint64_t u0 =
      (static_cast<std::uint64_t>(blk.v[0]) << 32) | blk.v[1];
  const std::uint64_t u1 =
      (static_cast<std::uint64_t>(blk.v[2]) << 32) | blk.v[3];
  const double r = std::sqrt(-2.0 * std::log(uniform_from_bits(u0)));
  const double phi = 2.0 * std::numbers::pi * uniform_from_bits(u1);
  return {r * std::cos(phi), r * std::sin(phi)};
}

// Stream ids keep unrelated users of the same seed statistically independent.
enum class NoiseStream : std::uint32_t {
  kSpdeModes = 0,
  kToyModel = 1,
  kLimitLawPos = 2,
  kLimitLawNeg = 3,
};

inline std::pair<double, double> normal_pair(std::uint64_t seed,
                                             NoiseStream stream,
                                             std::uint64_t major,
                                             std::uint64_t minor) {
  return normal_pair(seed, static_cast<std::uint32_t>(minor),
                     static_cast<std::uint32_t>(minor >> 32),
                     static_cast<std::uint32_t>(major),
                     static_cast<std::uint32_t>(
                         (major >> 32) ^
                         (static_cast<std::uint64_t>(stream) << 24)));
}

}  // namespace heatcp

#endif
