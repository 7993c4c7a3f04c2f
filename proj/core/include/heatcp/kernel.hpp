#ifndef HEATCP_KERNEL_HPP
#define HEATCP_KERNEL_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "heatcp/profile.hpp"
#include "heatcp/spectrum.hpp"

namespace heatcp {

// Measurement kernel K: supported in [-1/2,1/2], unit L2 norm, at least C^2
// so that the zero extension admits a classical Laplacian.  The default is
// the polynomial c (1-4x^2)^3; higher polynomial orders and a C-infinity
// bump are available behind the same interface.
class MeasurementKernel {
 public:
  static MeasurementKernel polynomial(int p = 3);
  static MeasurementKernel bump();

  double value(double x) const { return inside(x) ? value_(x) : 0.0; }
  double d1(double x) const { return inside(x) ? d1_(x) : 0.0; }
  double d2(double x) const { return inside(x) ? d2_(x) : 0.0; }

  // Cached ||K'||_{L2}^2; enters every rate constant.
  double norm_d1_sq() const { return norm_d1_sq_; }
  double normalization() const { return normalization_; }

 private:
  MeasurementKernel(std::function<double(double)> v,
                    std::function<double(double)> g,
                    std::function<double(double)> h, double c,
                    double norm_d1_sq)
      : value_(std::move(v)),
        d1_(std::move(g)),
        d2_(std::move(h)),
        normalization_(c),
        norm_d1_sq_(norm_d1_sq) {}

  static bool inside(double x) { return x > -0.5 && x < 0.5; }

  std::function<double(double)> value_;
  std::function<double(double)> d1_;
  std::function<double(double)> d2_;
  double normalization_;
  double norm_d1_sq_;
};

// Equidistant measurement sites x_i = (i-1/2)/n with resolution delta = 1/n.
// Site indices are 1-based.
class MeasurementGrid {
 public:
  explicit MeasurementGrid(int n);

  int n() const { return n_; }
  double delta() const { return delta_; }
  double site(int i) const;

  // Index of the block whose kernel support contains the change point.
  int k_bullet(const DiffusivityProfile& profile) const;

  // Support of K_{delta,i} is [(i-1)delta, i delta].
  double support_lo(int i) const { return (i - 1) * delta_; }
  double support_hi(int i) const { return i * delta_; }

 private:
  int n_;
  double delta_;
};

// K_{delta,i} and its Laplacian as evaluable handles.
class ScaledKernel {
 public:
  ScaledKernel(const MeasurementKernel& kernel, const MeasurementGrid& grid,
               int i);

  double value(double x) const {
    return inv_sqrt_delta_ * kernel_->value((x - center_) / delta_);
  }
  // Delta K_{delta,i}(x) = delta^{-5/2} K''((x - x_i)/delta).
  double laplacian(double x) const {
    return inv_pow52_delta_ * kernel_->d2((x - center_) / delta_);
  }

  double center() const { return center_; }
  double delta() const { return delta_; }
  // ||grad K_{delta,i}||^2 = delta^{-2} ||K'||^2.
  double grad_norm_sq() const {
    return kernel_->norm_d1_sq() / (delta_ * delta_);
  }

 private:
  const MeasurementKernel* kernel_;
  double center_;
  double delta_;
  double inv_sqrt_delta_;
  double inv_pow52_delta_;
};

ScaledKernel scaled_kernel(const MeasurementKernel& kernel,
                           const MeasurementGrid& grid, int i);

// Per-mode inner products a_k = <K_{delta,i}, e_k>, b_k = <Delta K_{delta,i}, e_k>
// by Gauss-Legendre panels on the kernel support, split at tau when the
// change point lies inside, with panel count scaled to the mode frequency.
struct SiteCoeffs {
  std::vector<double> a;
  std::vector<double> b;
};

SiteCoeffs kernel_eigen_coeffs(const SpectralDecomposition& decomp,
                               const MeasurementKernel& kernel,
                               const MeasurementGrid& grid, int i,
                               int panels_override = 0);

}  // namespace heatcp

#endif
