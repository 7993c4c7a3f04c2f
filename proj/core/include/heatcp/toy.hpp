#ifndef HEATCP_TOY_HPP
#define HEATCP_TOY_HPP

#include <cstdint>
#include <vector>

namespace heatcp {

// Gaussian signal-plus-white-noise analogue of the SPDE pipeline:
//   dY(x) = theta(x) dx + sigma dB(x)
// with theta jumping from theta_minus to theta_plus at tau, observed as
// increments on a fine grid of n_x points.  The homoskedastic noise level
// defaults to sigma = delta n^{-1/2} = n^{-3/2} for resolution n.
struct ToyConfig {
  double theta_minus = 1.0;
  double theta_plus = 2.0;
  double tau = 0.5;
  int n = 100;          // statistical resolution (delta = 1/n)
  std::int64_t n_x = 100000;  // simulation grid, n_x >> n
  double sigma = 0.0;   // 0 = use n^{-3/2}
  std::uint64_t seed = 0;

  double sigma_level() const;
  void validate() const;
};

std::vector<double> toy_simulate(const ToyConfig& config);

// Known-diffusivity MLE for tau: discrete argmax of the running-sum
// objective over interior grid candidates; smallest candidate on ties.
double toy_estimate_known_theta(const std::vector<double>& dY,
                                const ToyConfig& config);

// Rescaled error eta^2 delta^{-2} n (tau_hat - tau) that converges to the
// two-sided argmax law.
double toy_rescaled_error(double tau_hat, const ToyConfig& config);

}  // namespace heatcp

#endif
