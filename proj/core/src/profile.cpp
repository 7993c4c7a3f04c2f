#include "heatcp/profile.hpp"

#include <stdexcept>
#include <string>

namespace heatcp {

DiffusivityProfile::DiffusivityProfile(double theta_minus, double theta_plus,
                                       double tau, double theta_lo,
                                       double theta_hi)
    : theta_minus_(theta_minus),
      theta_plus_(theta_plus),
      tau_(tau),
      theta_lo_(theta_lo),
      theta_hi_(theta_hi) {
  if (!(theta_lo > 0.0) || !(theta_hi >= theta_lo)) {
    throw std::invalid_argument("diffusivity band must satisfy 0 < lo <= hi");
  }
  if (!(theta_minus >= theta_lo && theta_minus <= theta_hi) ||
      !(theta_plus >= theta_lo && theta_plus <= theta_hi)) {
    throw std::invalid_argument("diffusivity values must lie in the band");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("change point tau must lie in (0,1), got " +
                                std::to_string(tau));
  }
}

}  // namespace heatcp
