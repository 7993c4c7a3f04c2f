#ifndef HEATCP_ESTIMATORS_HPP
#define HEATCP_ESTIMATORS_HPP

#include <vector>

#include "heatcp/functionals.hpp"

namespace heatcp {

// Which quadratic-variation estimate pairs with the Ito sums.  Trapezoid is
// the production choice; left-point makes the discrete semimartingale
// identity exact and is used by the algebraic cross-checks.
enum class QvVariant { kTrapezoid, kLeft };

struct EstimateResult {
  double theta_minus_hat = 0.0;
  double theta_plus_hat = 0.0;
  double theta_circ_hat = 0.0;
  int k_hat = 0;
  double tau_hat = 0.0;
  std::vector<double> profile;  // profile log-likelihood L(k), k = 1..n
};

// Simultaneous M-estimator: for each candidate block k the three group
// parameters have closed-form clipped maximizers, and k_hat maximizes the
// profiled objective (smallest index on ties).  use_circ=false merges the
// candidate block into the plus group (rate-ablation variant).
EstimateResult estimate_simultaneous(const BlockFunctionals& funcs,
                                     double theta_lo, double theta_hi,
                                     bool use_circ = true,
                                     QvVariant qv = QvVariant::kTrapezoid);

struct CusumResult {
  int k_hat = 0;
  double tau_hat = 0.0;
  // Objective trace centered at its maximum: trace[k-1] = G(k) - G(k_hat).
  std::vector<double> trace;
};

// Known-diffusivity CUSUM change-point estimator.
CusumResult estimate_cusum_known_theta(const BlockFunctionals& funcs,
                                       double theta_minus, double theta_plus,
                                       QvVariant qv = QvVariant::kTrapezoid);

// Centered trace Z_k built from the martingale decomposition: Z_{k.} = 0,
// and for k away from k. the trace combines eta, M_i, B_i and the
// change-point remainder.  Algebraically identical to G(k) - G(k_bullet)
// when both use left-point quadratic variation on the same grid.
std::vector<double> centered_trace(const BlockFunctionals& funcs,
                                   double theta_minus, double theta_plus,
                                   int k_bullet);

// argmax of theta*a - theta^2/2*b over the band; clip of a/b for b > 0.
double clipped_ratio(double a, double b, double theta_lo, double theta_hi);

}  // namespace heatcp

#endif
