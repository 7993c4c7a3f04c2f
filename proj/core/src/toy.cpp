#include "heatcp/toy.hpp"

#include <cmath>
#include <stdexcept>

#include "heatcp/rng.hpp"

namespace heatcp {

double ToyConfig::sigma_level() const {
  return sigma > 0.0 ? sigma : std::pow(static_cast<double>(n), -1.5);
}

void ToyConfig::validate() const {
  if (n < 2) throw std::invalid_argument("ToyConfig: n < 2");
  if (n_x < 2 * n) throw std::invalid_argument("ToyConfig: n_x must be >> n");
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("ToyConfig: tau outside (0,1)");
  }
}

std::vector<double> toy_simulate(const ToyConfig& config) {
  config.validate();
  const double dx = 1.0 / static_cast<double>(config.n_x);
  const double noise = config.sigma_level() * std::sqrt(dx);
  std::vector<double> dY(static_cast<std::size_t>(config.n_x));
  for (std::int64_t j = 0; j < config.n_x; ++j) {
    const double x = (j + 0.5) * dx;
    const double theta = x < config.tau ? config.theta_minus : config.theta_plus;
    const auto [z1, z2] = normal_pair(config.seed, NoiseStream::kToyModel,
                                      0, static_cast<std::uint64_t>(j));
    (void)z2;
    dY[j] = theta * dx + noise * z1;
  }
  return dY;
}

double toy_estimate_known_theta(const std::vector<double>& dY,
                                const ToyConfig& config) {
  const double eta = config.theta_plus - config.theta_minus;
  if (eta == 0.0) {
    throw std::invalid_argument("toy_estimate_known_theta: eta = 0");
  }
  const std::int64_t N = static_cast<std::int64_t>(dY.size());
  const double dx = 1.0 / static_cast<double>(N);
  const double tm = config.theta_minus;
  const double tp = config.theta_plus;

  // l(cut) = theta_- S_cut + theta_+ (S_N - S_cut)
  //          - theta_-^2/2 x_cut - theta_+^2/2 (1 - x_cut), constants dropped.
  // Incremental sweep over interior candidates x_cut = cut*dx.
  double s = 0.0;
  double best_value = -1e308;
  std::int64_t best_cut = 1;
  double total = 0.0;
  for (double v : dY) total += v;
  for (std::int64_t cut = 1; cut < N; ++cut) {
    s += dY[cut - 1];
    const double x = cut * dx;
    const double value = tm * s + tp * (total - s) -
                         0.5 * tm * tm * x - 0.5 * tp * tp * (1.0 - x);
    if (value > best_value) {
      best_value = value;
      best_cut = cut;
    }
  }
  return best_cut * dx;
}

double toy_rescaled_error(double tau_hat, const ToyConfig& config) {
  const double eta = config.theta_plus - config.theta_minus;
  const double n = static_cast<double>(config.n);
  // eta^2 delta^{-2} n = eta^2 n^3 for delta = 1/n
  return eta * eta * n * n * n * (tau_hat - config.tau);
}

}  // namespace heatcp
