#include "heatcp/limit_law.hpp"

#include <cmath>
#include <stdexcept>

#include "heatcp/rng.hpp"

namespace heatcp {

void ArgminLawConfig::validate() const {
  if (!(half_width >= 20.0)) {
    throw std::invalid_argument("ArgminLawConfig: H must be >= 20");
  }
  if (!(step > 0.0 && step <= 1e-3 * half_width)) {
    throw std::invalid_argument("ArgminLawConfig: step must be <= 1e-3 H");
  }
  if (replicates < 1) {
    throw std::invalid_argument("ArgminLawConfig: replicates < 1");
  }
}

double argmin_of_increments(const std::vector<double>& pos_increments,
                            const std::vector<double>& neg_increments,
                            double step) {
  // h = 0 contributes value 0.
  double best_value = 0.0;
  double best_h = 0.0;
  double best_abs = 0.0;

  auto sweep = [&](const std::vector<double>& inc, double sign) {
    double w = 0.0;
    for (std::size_t m = 0; m < inc.size(); ++m) {
      w += inc[m];
      const double h = sign * step * static_cast<double>(m + 1);
      const double value = w + 0.5 * std::abs(h);
      const double habs = std::abs(h);
      if (value < best_value ||
          (value == best_value &&
           (habs < best_abs || (habs == best_abs && h < best_h)))) {
        best_value = value;
        best_h = h;
        best_abs = habs;
      }
    }
  };
  sweep(pos_increments, 1.0);
  sweep(neg_increments, -1.0);
  return best_h;
}

std::vector<double> sample_argmin(const ArgminLawConfig& config) {
  config.validate();
  const std::int64_t steps =
      static_cast<std::int64_t>(std::ceil(config.half_width / config.step));
  const double sd = std::sqrt(config.step);
  std::vector<double> out(static_cast<std::size_t>(config.replicates));
  std::vector<double> pos(static_cast<std::size_t>(steps));
  std::vector<double> neg(static_cast<std::size_t>(steps));
  for (std::int64_t r = 0; r < config.replicates; ++r) {
    for (std::int64_t m = 0; m < steps; ++m) {
      const auto [zp, z2] = normal_pair(config.seed, NoiseStream::kLimitLawPos,
                                        static_cast<std::uint64_t>(r),
                                        static_cast<std::uint64_t>(m));
      (void)z2;
      const auto [zn, z3] = normal_pair(config.seed, NoiseStream::kLimitLawNeg,
                                        static_cast<std::uint64_t>(r),
                                        static_cast<std::uint64_t>(m));
      (void)z3;
      pos[m] = sd * zp;
      neg[m] = sd * zn;
    }
    out[r] = argmin_of_increments(pos, neg, config.step);
  }
  return out;
}

std::vector<double> normalize_change_point_errors(
    const std::vector<double>& tau_hats, double tau, double horizon,
    double kernel_grad_norm_sq, double eta, double delta, double theta_star) {
  if (!(delta > 0.0) || eta == 0.0) {
    throw std::invalid_argument("normalize_change_point_errors: bad scales");
  }
  const double rate = eta * eta / (delta * delta * delta);
  const double factor =
      rate * horizon * kernel_grad_norm_sq / (2.0 * theta_star);
  std::vector<double> out;
  out.reserve(tau_hats.size());
  for (double t : tau_hats) out.push_back(factor * (t - tau));
  return out;
}

}  // namespace heatcp
