#include "heatcp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "heatcp/errors.hpp"

namespace heatcp {

double clipped_ratio(double a, double b, double theta_lo, double theta_hi) {
  if (!(b > 0.0)) {
    throw DegenerateBlock("zero quadratic variation in a required group");
  }
  return std::clamp(a / b, theta_lo, theta_hi);
}

namespace {

double group_value(double theta, double a, double b) {
  return theta * a - 0.5 * theta * theta * b;
}

const std::vector<double>& qv_of(const BlockFunctionals& f, QvVariant qv) {
  return qv == QvVariant::kTrapezoid ? f.B : f.B_left;
}

}  // namespace

EstimateResult estimate_simultaneous(const BlockFunctionals& funcs,
                                     double theta_lo, double theta_hi,
                                     bool use_circ, QvVariant qv) {
  const int n = funcs.n;
  if (n < 3) throw std::invalid_argument("estimate_simultaneous: n < 3");
  const std::vector<double>& A = funcs.A;
  const std::vector<double>& B = qv_of(funcs, qv);

  std::vector<double> pa(n + 1, 0.0), pb(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    pa[i + 1] = pa[i] + A[i];
    pb[i + 1] = pb[i] + B[i];
  }
  const double mid_band = 0.5 * (theta_lo + theta_hi);

  EstimateResult res;
  res.profile.resize(n);
  double best_value = -std::numeric_limits<double>::infinity();
  for (int k = 1; k <= n; ++k) {
    // minus group: i < k; circ block: i = k; plus group: i > k
    const double a_minus = pa[k - 1];
    const double b_minus = pb[k - 1];
    const double a_circ = A[k - 1];
    const double b_circ = B[k - 1];
    const double a_plus_circ = pa[n] - pa[k - 1];
    const double b_plus_circ = pb[n] - pb[k - 1];
    const double a_plus = pa[n] - pa[k];
    const double b_plus = pb[n] - pb[k];

    double tm = mid_band, tp = mid_band, tc = mid_band;
    double value = 0.0;
    if (k > 1) {
      tm = clipped_ratio(a_minus, b_minus, theta_lo, theta_hi);
      value += group_value(tm, a_minus, b_minus);
    }
    if (use_circ) {
      tc = clipped_ratio(a_circ, b_circ, theta_lo, theta_hi);
      value += group_value(tc, a_circ, b_circ);
      if (k < n) {
        tp = clipped_ratio(a_plus, b_plus, theta_lo, theta_hi);
        value += group_value(tp, a_plus, b_plus);
      }
    } else {
      tp = clipped_ratio(a_plus_circ, b_plus_circ, theta_lo, theta_hi);
      tc = tp;
      value += group_value(tp, a_plus_circ, b_plus_circ);
    }
    res.profile[k - 1] = value;
    if (value > best_value) {
      best_value = value;
      res.k_hat = k;
      res.theta_minus_hat = tm;
      res.theta_plus_hat = tp;
      res.theta_circ_hat = tc;
    }
  }
  res.tau_hat = res.k_hat * funcs.delta;
  return res;
}

CusumResult estimate_cusum_known_theta(const BlockFunctionals& funcs,
                                       double theta_minus, double theta_plus,
                                       QvVariant qv) {
  const int n = funcs.n;
  if (n < 2) {
    throw std::invalid_argument("estimate_cusum_known_theta: n < 2");
  }
  const std::vector<double>& A = funcs.A;
  const std::vector<double>& B = qv_of(funcs, qv);

  // G(k) = sum_{i<=k} l_i(theta_-) + sum_{i>k} l_i(theta_+); incremental in k.
  std::vector<double> g(n);
  double total_plus = 0.0;
  for (int i = 0; i < n; ++i) {
    total_plus += group_value(theta_plus, A[i], B[i]);
  }
  double running = total_plus;
  for (int k = 1; k <= n; ++k) {
    running += group_value(theta_minus, A[k - 1], B[k - 1]) -
               group_value(theta_plus, A[k - 1], B[k - 1]);
    g[k - 1] = running;
  }

  CusumResult res;
  res.k_hat = 1;
  double best = g[0];
  for (int k = 2; k <= n; ++k) {
    if (g[k - 1] > best) {
      best = g[k - 1];
      res.k_hat = k;
    }
  }
  res.tau_hat = res.k_hat * funcs.delta;
  res.trace.resize(n);
  for (int k = 0; k < n; ++k) res.trace[k] = g[k] - best;
  return res;
}

std::vector<double> centered_trace(const BlockFunctionals& funcs,
                                   double theta_minus, double theta_plus,
                                   int k_bullet) {
  const int n = funcs.n;
  if (k_bullet < 1 || k_bullet > n) {
    throw IndexOutOfRange("centered_trace: k_bullet " +
                          std::to_string(k_bullet));
  }
  if (!funcs.has_martingale()) {
    throw MissingBrownianPath("centered_trace needs the martingale terms");
  }
  const double eta = theta_plus - theta_minus;
  // Discrete remainder at the change-point block, theta' = theta_minus;
  // left-point quadratic variation keeps the identity exact.
  const double r = funcs.a(k_bullet) - theta_minus * funcs.b_left(k_bullet) -
                   funcs.m(k_bullet);

  std::vector<double> z(n, 0.0);
  for (int k = k_bullet - 1; k >= 1; --k) {
    // Z_k = eta sum_{i=k+1}^{k.} M_i - eta^2/2 sum B_i + eta R
    double zm = 0.0, zb = 0.0;
    for (int i = k + 1; i <= k_bullet; ++i) {
      zm += funcs.m(i);
      zb += funcs.b_left(i);
    }
    z[k - 1] = eta * zm - 0.5 * eta * eta * zb + eta * r;
  }
  for (int k = k_bullet + 1; k <= n; ++k) {
    double zm = 0.0, zb = 0.0;
    for (int i = k_bullet + 1; i <= k; ++i) {
      zm += funcs.m(i);
      zb += funcs.b_left(i);
    }
    z[k - 1] = -eta * zm - 0.5 * eta * eta * zb;
  }
  return z;
}

}  // namespace heatcp
