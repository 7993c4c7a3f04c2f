#ifndef HEATCP_SPECTRUM_HPP
#define HEATCP_SPECTRUM_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "heatcp/profile.hpp"

namespace heatcp {

// One eigenpair of -d/dx(theta d/dx) on (0,1) with Dirichlet boundary.
// The eigenfunction is a matched sine:
//   e(x) = amp_left  * sin(omega_minus * x)        on (0, tau)
//   e(x) = amp_right * sin(omega_plus * (1 - x))   on [tau, 1)
// with omega_pm = sqrt(lambda / theta_pm), L2-normalized, amp_left > 0.
struct EigenMode {
  double lambda;
  double omega_minus;
  double omega_plus;
  double amp_left;
  double amp_right;
};

class SpectralDecomposition {
 public:
  SpectralDecomposition(DiffusivityProfile profile,
                        std::vector<EigenMode> modes)
      : profile_(profile), modes_(std::move(modes)) {}

  const DiffusivityProfile& profile() const { return profile_; }
  int mode_count() const { return static_cast<int>(modes_.size()); }

  // Mode indices are 1-based throughout, matching lambda_1 <= lambda_2 <= ...
  double eigenvalue(int k) const;
  const EigenMode& mode(int k) const;

  double evaluate(int k, double x) const;
  double evaluate_derivative(int k, double x) const;

 private:
  DiffusivityProfile profile_;
  std::vector<EigenMode> modes_;
};

// Root function of the matched-sine ansatz; vanishes exactly at the
// eigenvalues.  Total on lambda > 0.
double characteristic_value(double lambda, const DiffusivityProfile& profile);

// First `mode_count` eigenpairs in ascending order.  The search solves the
// monotone phase condition per mode and bisects to relative accuracy `tol`,
// so no root below lambda_{mode_count} can be skipped.
SpectralDecomposition decompose(const DiffusivityProfile& profile,
                                int mode_count, double tol = 1e-12);

double evaluate_eigenfunction(const SpectralDecomposition& decomp, int k,
                              double x);

// Closed-form (-Delta_theta)^{-1}(f'') for f in C^2 with compact support in
// (0,1).  Used as a spectral-calculus cross-check: the truncated sum
// sum_k lambda_k^{-1} <f'', e_k> e_k(x) must converge to this value.
double inverse_apply_second_derivative(const DiffusivityProfile& profile,
                                       const std::function<double(double)>& f,
                                       double x);

}  // namespace heatcp

#endif
