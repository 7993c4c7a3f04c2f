#ifndef HEATCP_LIMIT_LAW_HPP
#define HEATCP_LIMIT_LAW_HPP

#include <cstdint>
#include <vector>

namespace heatcp {

// Monte Carlo sampler of argmin_{h in R} { B<->(h) + |h|/2 } on a truncated
// symmetric grid.  The drift kills the far mass at rate e^{-H/8}; the
// escape probability at the default H = 40 sits below 1e-3.
struct ArgminLawConfig {
  double half_width = 40.0;  // H
  double step = 0.02;        // dh
  std::int64_t replicates = 20000;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<double> sample_argmin(const ArgminLawConfig& config);

// Grid argmin of one drifted two-sided path built from explicit increments
// (positive side first).  Ties resolve to smallest |h|, then smallest h.
// Exposed so stability tests can couple paths across resolutions.
double argmin_of_increments(const std::vector<double>& pos_increments,
                            const std::vector<double>& neg_increments,
                            double step);

// Rescales change-point errors per the limit normalization
// (eta^2/delta^3) * T ||K'||^2 / (2 theta_star) * (tau_hat - tau).
std::vector<double> normalize_change_point_errors(
    const std::vector<double>& tau_hats, double tau, double horizon,
    double kernel_grad_norm_sq, double eta, double delta, double theta_star);

}  // namespace heatcp

#endif
