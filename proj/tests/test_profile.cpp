#include "doctest.h"
#include "heatcp/profile.hpp"

#include <stdexcept>

using namespace heatcp;

TEST_CASE("profile construction validates the band and the change point") {
  CHECK_NOTHROW(DiffusivityProfile(1.0, 4.0, 0.5, 0.5, 4.0));
  // tau must lie strictly inside (0,1)
  CHECK_THROWS_AS(DiffusivityProfile(1.0, 4.0, 0.0, 0.5, 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiffusivityProfile(1.0, 4.0, 1.0, 0.5, 4.0),
                  std::invalid_argument);
  // values outside the band
  CHECK_THROWS_AS(DiffusivityProfile(0.1, 4.0, 0.5, 0.5, 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiffusivityProfile(1.0, 8.0, 0.5, 0.5, 4.0),
                  std::invalid_argument);
  // bad band
  CHECK_THROWS_AS(DiffusivityProfile(1.0, 1.0, 0.5, -1.0, 4.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiffusivityProfile(1.0, 1.0, 0.5, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("jump height accessor may be zero or negative") {
  CHECK(DiffusivityProfile(1.0, 1.0, 0.3, 1.0, 1.0).eta() == 0.0);
  CHECK(DiffusivityProfile(2.0, 1.0, 0.3, 0.5, 4.0).eta() == -1.0);
}

TEST_CASE("left-open convention at the jump") {
  DiffusivityProfile p(1.0, 4.0, 0.5, 0.5, 4.0);
  CHECK(p.value(0.49) == 1.0);
  CHECK(p.value(0.5) == 4.0);
  CHECK(p.value(0.51) == 4.0);
}
