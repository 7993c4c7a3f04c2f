#include "heatcp/simulate.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "heatcp/errors.hpp"
#include "heatcp/noise.hpp"
#include "heatcp/rng.hpp"

namespace heatcp {

namespace {

constexpr int kBlockSteps = 384;

using MatrixRM =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Eigen::MatrixXd;

}  // namespace

void SimulationConfig::validate() const {
  if (n < 1) throw std::invalid_argument("SimulationConfig: n < 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("SimulationConfig: T <= 0");
  if (time_steps < 4 * static_cast<std::int64_t>(n) * n) {
    throw std::invalid_argument(
        "SimulationConfig: time_steps must be >= 4 n^2");
  }
  if (mode_count < 10 * n) {
    throw std::invalid_argument("SimulationConfig: mode_count must be >= 10 n");
  }
}

ObservationCoeffs build_observation_coeffs(const SpectralDecomposition& decomp,
                                           const MeasurementKernel& kernel,
                                           const MeasurementGrid& grid) {
  ObservationCoeffs out;
  out.n = grid.n();
  out.mode_count = decomp.mode_count();
  out.a.resize(static_cast<std::size_t>(out.n) * out.mode_count);
  out.b.resize(static_cast<std::size_t>(out.n) * out.mode_count);
  out.lambda.resize(out.mode_count);
  for (int k = 1; k <= out.mode_count; ++k) {
    out.lambda[k - 1] = decomp.eigenvalue(k);
  }
  for (int i = 1; i <= out.n; ++i) {
    SiteCoeffs sc = kernel_eigen_coeffs(decomp, kernel, grid, i);
    std::copy(sc.a.begin(), sc.a.end(),
              out.a.begin() + static_cast<std::size_t>(i - 1) * out.mode_count);
    std::copy(sc.b.begin(), sc.b.end(),
              out.b.begin() + static_cast<std::size_t>(i - 1) * out.mode_count);
  }
  return out;
}

OuStepLaw ou_step_law(double lambda, double dt) {
  OuStepLaw law;
  const double u = lambda * dt;
  law.decay = std::exp(-u);
  const double cov = -std::expm1(-u) / lambda;         // Cov(xi, dW)
  law.xi_var = -std::expm1(-2.0 * u) / (2.0 * lambda); // Var(xi)
  law.wiener_load = cov / dt;
  double cond = law.xi_var - cov * cov / dt;
  if (u < 1e-2) {
    // Series of (1-e^{-2u})/(2u) - ((1-e^{-u})/u)^2 in u; the direct
    // difference loses all digits as u -> 0.
    cond = dt * (u * u / 12.0 - u * u * u / 12.0 +
                 17.0 * u * u * u * u / 360.0);
  }
  law.extra_sd = std::sqrt(std::max(cond, 0.0));
  return law;
}

void run_simulation(const SimulationConfig& config,
                    const DiffusivityProfile& profile,
                    const ObservationCoeffs& coeffs, StepSink& sink) {
  config.validate();
  if (coeffs.n != config.n || coeffs.mode_count < config.mode_count) {
    throw std::invalid_argument("run_simulation: coeffs do not match config");
  }
  const int n = config.n;
  const int M = config.mode_count;
  const std::int64_t N = config.time_steps;
  const double dt = config.horizon / static_cast<double>(N);
  const MeasurementGrid grid(n);
  const int kb = grid.k_bullet(profile);

  Eigen::Map<const MatrixRM> full_a(coeffs.a.data(), n, coeffs.mode_count);
  Eigen::Map<const MatrixRM> full_b(coeffs.b.data(), n, coeffs.mode_count);
  const auto A = full_a.leftCols(M);
  const auto B = full_b.leftCols(M);
  // Drift coefficients of the change-point block:
  // <Delta_theta K_{delta,kb}, e_k> = -lambda_k a_k by self-adjointness.
  Eigen::VectorXd drift_kb(M);
  for (int k = 0; k < M; ++k) {
    drift_kb[k] = -coeffs.lambda[k] * coeffs.a_at(kb, k + 1);
  }

  std::vector<OuStepLaw> law(M);
  for (int k = 0; k < M; ++k) {
    law[k] = ou_step_law(coeffs.lambda[k], dt);
  }

  Eigen::VectorXd state = Eigen::VectorXd::Zero(M);
  MatrixXd modes(M, kBlockSteps);
  MatrixXd wiener(M, kBlockSteps);
  MatrixXd Xb(n, kBlockSteps), XDb(n, kBlockSteps), dBb(n, kBlockSteps);
  Eigen::VectorXd xtheta(kBlockSteps);
  const double sqrt_dt = std::sqrt(dt);

  std::vector<double> z1(kBlockSteps), z2(kBlockSteps);
  std::int64_t j = 1;
  while (j <= N) {
    const int count = static_cast<int>(std::min<std::int64_t>(kBlockSteps, N - j + 1));
    for (int k = 0; k < M; ++k) {
      detail::fill_mode_noise(config.seed, static_cast<std::uint32_t>(k), j,
                              count, z1.data(), z2.data());
      double x = state[k];
      const OuStepLaw& L = law[k];
      for (int jj = 0; jj < count; ++jj) {
        const double dW = sqrt_dt * z1[jj];
        x = L.decay * x + L.wiener_load * dW + L.extra_sd * z2[jj];
        modes(k, jj) = x;
        wiener(k, jj) = dW;
      }
      state[k] = x;
    }
    const bool paths = sink.wants_paths();
    if (paths) {
      Xb.leftCols(count).noalias() = A * modes.leftCols(count);
    }
    XDb.leftCols(count).noalias() = B * modes.leftCols(count);
    dBb.leftCols(count).noalias() = A * wiener.leftCols(count);
    xtheta.head(count).noalias() = modes.leftCols(count).transpose() * drift_kb;
    sink.on_block(j, count, n, paths ? Xb.data() : nullptr, XDb.data(),
                  dBb.data(), xtheta.data());
    j += count;
  }
}

namespace {

class DenseSink : public StepSink {
 public:
  DenseSink(ObservationSet& obs) : obs_(obs) {}

  void on_block(std::int64_t j0, int count, int n, const double* X,
                const double* XD, const double* dB,
                const double* xtheta) override {
    const std::int64_t cols = obs_.config.time_steps + 1;
    for (int jj = 0; jj < count; ++jj) {
      const std::int64_t j = j0 + jj;
      for (int i = 0; i < n; ++i) {
        obs_.X[i * cols + j] = X[jj * n + i];
        obs_.XD[i * cols + j] = XD[jj * n + i];
        obs_.dB[i * obs_.config.time_steps + (j - 1)] = dB[jj * n + i];
      }
      obs_.xtheta_kb[j] = xtheta[jj];
    }
  }

 private:
  ObservationSet& obs_;
};

}  // namespace

ObservationSet simulate(const SimulationConfig& config,
                        const DiffusivityProfile& profile,
                        const ObservationCoeffs& coeffs) {
  config.validate();
  ObservationSet obs{config, profile, {}, {}, {}, {}, {}};
  const std::int64_t cols = config.time_steps + 1;
  obs.times.resize(cols);
  const double dt = config.horizon / static_cast<double>(config.time_steps);
  for (std::int64_t j = 0; j < cols; ++j) {
    obs.times[j] = dt * static_cast<double>(j);
  }
  obs.X.assign(static_cast<std::size_t>(config.n) * cols, 0.0);
  obs.XD.assign(static_cast<std::size_t>(config.n) * cols, 0.0);
  obs.dB.assign(static_cast<std::size_t>(config.n) * config.time_steps, 0.0);
  obs.xtheta_kb.assign(cols, 0.0);
  DenseSink sink(obs);
  run_simulation(config, profile, coeffs, sink);
  return obs;
}

std::vector<double> brownian_increments_for_site(const SimulationConfig& config,
                                                 const ObservationCoeffs& coeffs,
                                                 int i) {
  config.validate();
  if (i < 1 || i > config.n) {
    throw IndexOutOfRange("brownian_increments_for_site: site " +
                          std::to_string(i));
  }
  const int M = config.mode_count;
  const std::int64_t N = config.time_steps;
  const double sqrt_dt =
      std::sqrt(config.horizon / static_cast<double>(N));
  std::vector<double> out(static_cast<std::size_t>(N), 0.0);
  std::vector<double> z1(kBlockSteps), z2(kBlockSteps);
  for (int k = 0; k < M; ++k) {
    const double ak = coeffs.a_at(i, k + 1);
    if (ak == 0.0) continue;
    std::int64_t j = 1;
    while (j <= N) {
      const int count =
          static_cast<int>(std::min<std::int64_t>(kBlockSteps, N - j + 1));
      detail::fill_mode_noise(config.seed, static_cast<std::uint32_t>(k), j,
                              count, z1.data(), z2.data());
      for (int jj = 0; jj < count; ++jj) {
        out[j - 1 + jj] += ak * sqrt_dt * z1[jj];
      }
      j += count;
    }
  }
  return out;
}

}  // namespace heatcp
