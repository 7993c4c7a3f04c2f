#include "heatcp/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "heatcp/errors.hpp"
#include "heatcp/quadrature.hpp"

namespace heatcp {

MeasurementKernel MeasurementKernel::polynomial(int p) {
  if (p < 3) {
    throw std::invalid_argument(
        "polynomial kernel needs p >= 3 for a C^2 zero extension");
  }
  auto shape = [p](double x) { return std::pow(1.0 - 4.0 * x * x, p); };
  // normalization c = (int shape^2)^{-1/2}
  const double s2 = integrate_panels(
      [&](double x) { return shape(x) * shape(x); }, -0.5, 0.5, 16, 24);
  const double c = 1.0 / std::sqrt(s2);

  auto value = [c, shape](double x) { return c * shape(x); };
  auto d1 = [c, p](double x) {
    return c * p * std::pow(1.0 - 4.0 * x * x, p - 1) * (-8.0 * x);
  };
  auto d2 = [c, p](double x) {
    const double u = 1.0 - 4.0 * x * x;
    return c * (-8.0 * p) *
           (std::pow(u, p - 1) - 8.0 * (p - 1) * x * x * std::pow(u, p - 2));
  };
  const double nd1 = integrate_panels(
      [&](double x) { return d1(x) * d1(x); }, -0.5, 0.5, 16, 24);
  return MeasurementKernel(value, d1, d2, c, nd1);
}

MeasurementKernel MeasurementKernel::bump() {
  auto shape = [](double x) {
    const double u = 1.0 - 4.0 * x * x;
    return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
  };
  const double s2 = integrate_panels(
      [&](double x) { return shape(x) * shape(x); }, -0.5, 0.5, 64, 24);
  const double c = 1.0 / std::sqrt(s2);

  auto value = [c, shape](double x) { return c * shape(x); };
  auto d1 = [c, shape](double x) {
    const double u = 1.0 - 4.0 * x * x;
    if (u <= 0.0) return 0.0;
    return c * shape(x) * (-8.0 * x) / (u * u);
  };
  auto d2 = [c, shape](double x) {
    const double u = 1.0 - 4.0 * x * x;
    if (u <= 0.0) return 0.0;
    const double w = -8.0 * x / (u * u);
    const double dw = -8.0 / (u * u) - 8.0 * x * (-2.0 / (u * u * u)) * (-8.0 * x);
    return c * shape(x) * (w * w + dw);
  };
  const double nd1 = integrate_panels(
      [&](double x) { return d1(x) * d1(x); }, -0.5, 0.5, 64, 24);
  return MeasurementKernel(value, d1, d2, c, nd1);
}

MeasurementGrid::MeasurementGrid(int n) : n_(n), delta_(1.0 / n) {
  if (n < 1) throw std::invalid_argument("MeasurementGrid: n < 1");
}

double MeasurementGrid::site(int i) const {
  if (i < 1 || i > n_) {
    throw IndexOutOfRange("site index " + std::to_string(i));
  }
  return (i - 0.5) * delta_;
}

int MeasurementGrid::k_bullet(const DiffusivityProfile& profile) const {
  const int k = static_cast<int>(std::ceil(profile.tau() * n_));
  return std::clamp(k, 1, n_);
}

ScaledKernel::ScaledKernel(const MeasurementKernel& kernel,
                           const MeasurementGrid& grid, int i)
    : kernel_(&kernel),
      center_(grid.site(i)),
      delta_(grid.delta()),
      inv_sqrt_delta_(1.0 / std::sqrt(grid.delta())),
      inv_pow52_delta_(std::pow(grid.delta(), -2.5)) {}

ScaledKernel scaled_kernel(const MeasurementKernel& kernel,
                           const MeasurementGrid& grid, int i) {
  return ScaledKernel(kernel, grid, i);
}

namespace {

// Integrates g over [lo,hi] with panels sized so each covers at most ~pi
// of the phase omega*(hi-lo).
double oscillatory_integral(const std::function<double(double)>& g, double lo,
                            double hi, double omega, int panels_override) {
  if (hi <= lo) return 0.0;
  int panels = panels_override > 0
                   ? panels_override
                   : std::max(2, static_cast<int>(std::ceil(
                                     (hi - lo) * omega / std::numbers::pi)));
  return integrate_panels(g, lo, hi, panels, 12);
}

}  // namespace

SiteCoeffs kernel_eigen_coeffs(const SpectralDecomposition& decomp,
                               const MeasurementKernel& kernel,
                               const MeasurementGrid& grid, int i,
                               int panels_override) {
  const DiffusivityProfile& profile = decomp.profile();
  const ScaledKernel sk(kernel, grid, i);
  const double lo = grid.support_lo(i);
  const double hi = grid.support_hi(i);
  const double tau = profile.tau();
  const bool split = tau > lo && tau < hi;

  const int m_count = decomp.mode_count();
  SiteCoeffs out;
  out.a.resize(m_count);
  out.b.resize(m_count);

  const double theta_min = std::min(profile.theta_minus(), profile.theta_plus());
  for (int k = 1; k <= m_count; ++k) {
    const double omega = std::sqrt(decomp.eigenvalue(k) / theta_min);
    auto fa = [&](double x) { return sk.value(x) * decomp.evaluate(k, x); };
    auto fb = [&](double x) { return sk.laplacian(x) * decomp.evaluate(k, x); };
    double a, b;
    if (split) {
      a = oscillatory_integral(fa, lo, tau, omega, panels_override) +
          oscillatory_integral(fa, tau, hi, omega, panels_override);
      b = oscillatory_integral(fb, lo, tau, omega, panels_override) +
          oscillatory_integral(fb, tau, hi, omega, panels_override);
    } else {
      a = oscillatory_integral(fa, lo, hi, omega, panels_override);
      b = oscillatory_integral(fb, lo, hi, omega, panels_override);
    }
    out.a[k - 1] = a;
    out.b[k - 1] = b;
  }

  // Self-check: the used panel count must agree with a doubled auto-sized
  // reference within roundoff of the coefficient scale.  Probes the mode
  // carrying the largest |b| and the fastest mode whose coefficient is
  // still relevant; the deepest tail modes are near zero either way.
  {
    int k_peak = 1;
    for (int j = 2; j <= m_count; ++j) {
      if (std::abs(out.b[j - 1]) > std::abs(out.b[k_peak - 1])) k_peak = j;
    }
    int k_fast = k_peak;
    const double floor = 1e-6 * std::abs(out.b[k_peak - 1]);
    for (int j = m_count; j >= 1; --j) {
      if (std::abs(out.b[j - 1]) >= floor) {
        k_fast = j;
        break;
      }
    }
    for (int k : {k_peak, k_fast}) {
      const double omega = std::sqrt(decomp.eigenvalue(k) / theta_min);
      const int auto_panels = std::max(
          2, static_cast<int>(std::ceil((hi - lo) * omega / std::numbers::pi)));
      const int used = panels_override > 0 ? panels_override : auto_panels;
      auto fb = [&](double x) {
        return sk.laplacian(x) * decomp.evaluate(k, x);
      };
      double ref = 0.0, fine = 0.0;
      if (split) {
        ref = integrate_panels(fb, lo, tau, used, 12) +
              integrate_panels(fb, tau, hi, used, 12);
        fine = integrate_panels(fb, lo, tau, 2 * auto_panels, 12) +
               integrate_panels(fb, tau, hi, 2 * auto_panels, 12);
      } else {
        ref = integrate_panels(fb, lo, hi, used, 12);
        fine = integrate_panels(fb, lo, hi, 2 * auto_panels, 12);
      }
      const double scale = std::pow(grid.delta(), -2.0) + std::abs(fine);
      if (std::abs(fine - ref) > 1e-8 * scale) {
        throw QuadratureNonConvergence(
            "kernel_eigen_coeffs: panel refinement moved mode " +
            std::to_string(k) + " by " + std::to_string(std::abs(fine - ref)));
      }
    }
  }

  return out;
}

}  // namespace heatcp
