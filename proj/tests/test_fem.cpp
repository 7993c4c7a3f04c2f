#include <cmath>
#include <numbers>

#include "doctest.h"
#include "heatcp/errors.hpp"
#include "heatcp/fem.hpp"
#include "heatcp/spectrum.hpp"

using namespace heatcp;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("fem recovers the constant-coefficient spectrum") {
  DiffusivityProfile p(1.0, 1.0, 0.5, 0.5, 4.0);
  auto f = fem_oracle(p, 10000, 1);
  CHECK(f.eigenvalue(1) == doctest::Approx(kPi2).epsilon(1e-6));
}

TEST_CASE("fem scaling with theta") {
  DiffusivityProfile p(2.0, 2.0, 0.5, 0.5, 4.0);
  auto f = fem_oracle(p, 10000, 2);
  CHECK(f.eigenvalue(2) == doctest::Approx(8.0 * kPi2).epsilon(1e-6));
}

TEST_CASE("fem and the semi-analytic route cross-validate") {
  DiffusivityProfile p(1.0, 4.0, 0.5, 0.5, 4.0);
  auto f = fem_oracle(p, 6000, 20, true);
  auto d = decompose(p, 20);
  for (int k = 1; k <= 20; ++k) {
    CHECK(f.eigenvalue(k) == doctest::Approx(d.eigenvalue(k)).epsilon(1e-4));
  }
  // eigenvector shape at a few points
  for (double x : {0.2, 0.4, 0.6, 0.8}) {
    CHECK(f.evaluate(2, x) == doctest::Approx(d.evaluate(2, x)).epsilon(5e-3));
  }
}

TEST_CASE("fem rejects under-resolved requests") {
  DiffusivityProfile p(1.0, 4.0, 0.5, 0.5, 4.0);
  CHECK_THROWS_AS(fem_oracle(p, 40, 10), SingularMatrix);
}

TEST_CASE("fem eigenvector accessor bounds") {
  DiffusivityProfile p(1.0, 1.0, 0.5, 0.5, 4.0);
  auto f = fem_oracle(p, 200, 2, true);
  CHECK_THROWS_AS(f.eigenvalue(3), IndexOutOfRange);
  CHECK_THROWS_AS(f.evaluate(3, 0.5), IndexOutOfRange);
  CHECK(f.evaluate(1, -0.5) == 0.0);
  CHECK(f.evaluate(1, 1.5) == 0.0);
}
