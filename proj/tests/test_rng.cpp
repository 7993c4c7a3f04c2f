#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "heatcp/noise.hpp"
#include "heatcp/rng.hpp"
#include "heatcp/simulate.hpp"

using namespace heatcp;

TEST_CASE("philox known-answer vectors") {
  // Random123 reference vectors for philox4x32-10.
  auto zero = Philox4x32::generate(0, 0, 0, 0, 0);
  CHECK(zero.v[0] == 0x6627e8d5u);
  CHECK(zero.v[1] == 0xe169c58du);
  CHECK(zero.v[2] == 0xbc57ac4cu);
  CHECK(zero.v[3] == 0x9b00dbd8u);

  auto ones = Philox4x32::generate(0xffffffffffffffffull, 0xffffffffu,
                                   0xffffffffu, 0xffffffffu, 0xffffffffu);
  CHECK(ones.v[0] == 0x408f276du);
  CHECK(ones.v[1] == 0x41c83b0eu);
  CHECK(ones.v[2] == 0xa20bc7c6u);
  CHECK(ones.v[3] == 0x6d5451fdu);

  auto pi = Philox4x32::generate(0x299f31d0a4093822ull, 0x243f6a88u,
                                 0x85a308d3u, 0x13198a2eu, 0x03707344u);
  CHECK(pi.v[0] == 0xd16cfe09u);
  CHECK(pi.v[1] == 0x94fdccebu);
  CHECK(pi.v[2] == 0x5001e420u);
  CHECK(pi.v[3] == 0x24126ea1u);
}

TEST_CASE("uniform_from_bits stays inside (0,1)") {
  CHECK(uniform_from_bits(0) > 0.0);
  CHECK(uniform_from_bits(~0ull) < 1.0);
}

TEST_CASE("derived seeds differ across n and replicate") {
  std::set<std::uint64_t> seen;
  for (int n : {10, 20, 40}) {
    for (int r = 0; r < 50; ++r) {
      seen.insert(derive_seed(42, n, r));
    }
  }
  CHECK(seen.size() == 150);
  CHECK(derive_seed(42, 10, 0) != derive_seed(43, 10, 0));
}

TEST_CASE("batched mode noise has standard normal moments") {
  const int count = 200000;
  std::vector<double> z1(count), z2(count);
  detail::fill_mode_noise(7, 3, 1, count, z1.data(), z2.data());
  double m1 = 0, m2 = 0, cross = 0;
  for (int i = 0; i < count; ++i) {
    m1 += z1[i] + z2[i];
    m2 += z1[i] * z1[i] + z2[i] * z2[i];
    cross += z1[i] * z2[i];
  }
  m1 /= 2.0 * count;
  m2 /= 2.0 * count;
  cross /= count;
  CHECK(std::abs(m1) < 4.0 / std::sqrt(2.0 * count));
  CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(cross) < 4.0 / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("ou step law reproduces the closed-form joint covariance") {
  // (xi, dW) for one exact transition: Var(xi) = (1-e^{-2u})/(2 lambda),
  // Cov(xi, dW) = (1-e^{-u})/lambda, Var(dW) = dt.
  for (double lambda : {0.5, 30.0, 4000.0}) {
    const double dt = 1e-3;
    const OuStepLaw law = ou_step_law(lambda, dt);
    const double var_xi_cf = -std::expm1(-2.0 * lambda * dt) / (2.0 * lambda);
    const double cov_cf = -std::expm1(-lambda * dt) / lambda;
    // construction algebra: Var = load^2 dt + extra^2, Cov = load * dt
    CHECK(law.wiener_load * dt == doctest::Approx(cov_cf).epsilon(1e-12));
    CHECK(law.wiener_load * law.wiener_load * dt + law.extra_sd * law.extra_sd ==
          doctest::Approx(var_xi_cf).epsilon(1e-9));
    CHECK(law.xi_var == doctest::Approx(var_xi_cf).epsilon(1e-12));

    // Monte Carlo of the pair against the closed form.
    const int reps = 400000;
    std::vector<double> z1(reps), z2(reps);
    detail::fill_mode_noise(11, 0, 1, reps, z1.data(), z2.data());
    double var_xi = 0, cov = 0, var_dw = 0;
    const double sqrt_dt = std::sqrt(dt);
    for (int i = 0; i < reps; ++i) {
      const double dw = sqrt_dt * z1[i];
      const double xi = law.wiener_load * dw + law.extra_sd * z2[i];
      var_xi += xi * xi;
      cov += xi * dw;
      var_dw += dw * dw;
    }
    var_xi /= reps;
    cov /= reps;
    var_dw /= reps;
    CHECK(var_xi == doctest::Approx(var_xi_cf).epsilon(0.02));
    CHECK(cov == doctest::Approx(cov_cf).epsilon(0.02));
    CHECK(var_dw == doctest::Approx(dt).epsilon(0.02));
  }
}

TEST_CASE("ou step law series branch agrees with the direct formula") {
  // u near the 1e-2 switch: both branches must agree.
  const double dt = 1.0;
  for (double lambda : {0.009, 0.011, 0.02}) {
    const OuStepLaw law = ou_step_law(lambda, dt);
    const double v = -std::expm1(-2.0 * lambda * dt) / (2.0 * lambda);
    const double c = -std::expm1(-lambda * dt) / lambda;
    const double direct = v - c * c / dt;
    CHECK(law.extra_sd * law.extra_sd == doctest::Approx(direct).epsilon(1e-6));
  }
}
