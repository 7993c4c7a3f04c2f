#ifndef HEATCP_FUNCTIONALS_HPP
#define HEATCP_FUNCTIONALS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heatcp/profile.hpp"
#include "heatcp/simulate.hpp"

namespace heatcp {

// Per-site sufficient statistics of one observation path:
//   A_i      = int X^D dX   (Ito, left-point sums)
//   B_i      = int (X^D)^2 dt, trapezoid
//   B_left_i = same integral with left-point sums; pairs with A_i in the
//              exact discrete semimartingale identity
//   M_i      = int X^D dB   (left-point sums; only when dB was exported)
struct BlockFunctionals {
  int n = 0;
  double delta = 0.0;
  double horizon = 0.0;
  int k_bullet = 0;  // block containing the change point (from provenance)
  DiffusivityProfile profile;

  std::vector<double> A;
  std::vector<double> B;
  std::vector<double> B_left;
  std::optional<std::vector<double>> M;

  double a(int i) const { return A[i - 1]; }
  double b(int i) const { return B[i - 1]; }
  double b_left(int i) const { return B_left[i - 1]; }
  double m(int i) const;
  bool has_martingale() const { return M.has_value(); }
};

BlockFunctionals compute_functionals(const ObservationSet& obs);

// Fused streaming path: identical arithmetic to
// compute_functionals(simulate(...)) without materializing the paths.
BlockFunctionals simulate_functionals(const SimulationConfig& config,
                                      const DiffusivityProfile& profile,
                                      const ObservationCoeffs& coeffs);

// Remainder at the change-point block via the rearranged identity
// R(theta') = A_{k.} - theta' B_{k.} - M_{k.`}.  Diagnostic only.
double remainder_proxy(const BlockFunctionals& funcs, double theta_prime,
                       bool left_quadrature = false);

// Grid search for the band value minimizing |mean of R(theta')| over
// replicated functionals; diagnostic companion of the nuisance parameter.
double theta_circ_search(const std::vector<BlockFunctionals>& replicates,
                         int grid_points = 512);

// Empirical tail probability of |sum_i alpha_i (B_i - mean_i)| >= z over
// replicates next to the Bernstein-type bound.  kernel_grad_norm_sq is
// ||K'||^2 of the measurement kernel that produced the functionals.
struct TailDiagnostic {
  double empirical;
  double bound;
  double std_error;  // binomial SE of the empirical probability
};

TailDiagnostic tail_diagnostic(const std::vector<BlockFunctionals>& replicates,
                               const std::vector<double>& alpha, double z,
                               double kernel_grad_norm_sq);

// CSV export of per-site (A_i, B_i) with site metadata.
std::string functionals_to_csv(const BlockFunctionals& funcs);

}  // namespace heatcp

#endif
