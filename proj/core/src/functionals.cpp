#include "heatcp/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "heatcp/errors.hpp"

namespace heatcp {

double BlockFunctionals::m(int i) const {
  if (!M.has_value()) {
    throw MissingBrownianPath("martingale term requested but dB not exported");
  }
  return (*M)[i - 1];
}

namespace {

// Shared accumulation; both the dense and the streaming path feed steps
// through here in the same order, so results agree bit for bit.
//
// The Ito sums evaluate dX through its block-wise semimartingale
// representation on the grid: dX_i = theta_i X^D_i dt + dB_i off the change
// point, and dX_{k.} = <Delta_theta X, K_{delta,k.}> dt + dB_{k.} at it.
// Differencing the sampled X paths instead would bias the drift part by a
// factor sum a^2 (1-e^{-lambda dt})/(lambda dt) per mode, which stays O(1)
// at the default time resolution.
class FunctionalAccumulator {
 public:
  FunctionalAccumulator(int n, double dt, bool with_martingale,
                        std::vector<double> theta_blocks, int k_bullet)
      : n_(n),
        dt_(dt),
        with_m_(with_martingale),
        theta_(std::move(theta_blocks)),
        kb_(k_bullet),
        prev_xd_(n, 0.0),
        prev_xtheta_(0.0),
        A_(n, 0.0),
        B_trap_(n, 0.0),
        B_left_(n, 0.0),
        M_(n, 0.0) {}

  void step(const double* XD, const double* dB, double xtheta) {
    for (int i = 0; i < n_; ++i) {
      const double xd = XD[i];
      const double drift_prev =
          (i + 1 == kb_) ? prev_xtheta_ : theta_[i] * prev_xd_[i];
      A_[i] += prev_xd_[i] * (drift_prev * dt_ + dB[i]);
      B_left_[i] += prev_xd_[i] * prev_xd_[i] * dt_;
      B_trap_[i] += 0.5 * (prev_xd_[i] * prev_xd_[i] + xd * xd) * dt_;
      M_[i] += prev_xd_[i] * dB[i];
      prev_xd_[i] = xd;
    }
    prev_xtheta_ = xtheta;
  }

  void finish(BlockFunctionals& out) {
    out.A = std::move(A_);
    out.B = std::move(B_trap_);
    out.B_left = std::move(B_left_);
    if (with_m_) out.M = std::move(M_);
  }

 private:
  int n_;
  double dt_;
  bool with_m_;
  std::vector<double> theta_;
  int kb_;
  std::vector<double> prev_xd_;
  double prev_xtheta_;
  std::vector<double> A_, B_trap_, B_left_, M_;
};

BlockFunctionals make_shell(const SimulationConfig& config,
                            const DiffusivityProfile& profile) {
  MeasurementGrid grid(config.n);
  BlockFunctionals f{config.n,
                     grid.delta(),
                     config.horizon,
                     grid.k_bullet(profile),
                     profile,
                     {},
                     {},
                     {},
                     std::nullopt};
  return f;
}

std::vector<double> block_thetas(const SimulationConfig& config,
                                 const DiffusivityProfile& profile) {
  MeasurementGrid grid(config.n);
  std::vector<double> theta(config.n);
  for (int i = 1; i <= config.n; ++i) theta[i - 1] = profile.value(grid.site(i));
  return theta;
}

}  // namespace

BlockFunctionals compute_functionals(const ObservationSet& obs) {
  BlockFunctionals out = make_shell(obs.config, obs.profile);
  const std::int64_t N = obs.config.time_steps;
  const double dt = obs.config.horizon / static_cast<double>(N);
  FunctionalAccumulator acc(obs.config.n, dt, obs.has_brownian(),
                            block_thetas(obs.config, obs.profile),
                            out.k_bullet);
  std::vector<double> xdcol(obs.config.n), dbcol(obs.config.n);
  for (std::int64_t j = 1; j <= N; ++j) {
    for (int i = 1; i <= obs.config.n; ++i) {
      xdcol[i - 1] = obs.xd(i, j);
      dbcol[i - 1] = obs.db(i, j);
    }
    acc.step(xdcol.data(), dbcol.data(), obs.xtheta_kb[j]);
  }
  acc.finish(out);
  return out;
}

namespace {

class FunctionalSink : public StepSink {
 public:
  FunctionalSink(FunctionalAccumulator& acc) : acc_(acc) {}
  void on_block(std::int64_t, int count, int n, const double*,
                const double* XD, const double* dB,
                const double* xtheta) override {
    for (int jj = 0; jj < count; ++jj) {
      acc_.step(XD + static_cast<std::size_t>(jj) * n,
                dB + static_cast<std::size_t>(jj) * n, xtheta[jj]);
    }
  }
  bool wants_paths() const override { return false; }

 private:
  FunctionalAccumulator& acc_;
};

}  // namespace

BlockFunctionals simulate_functionals(const SimulationConfig& config,
                                      const DiffusivityProfile& profile,
                                      const ObservationCoeffs& coeffs) {
  BlockFunctionals out = make_shell(config, profile);
  const double dt = config.horizon / static_cast<double>(config.time_steps);
  FunctionalAccumulator acc(config.n, dt, config.with_brownian,
                            block_thetas(config, profile), out.k_bullet);
  FunctionalSink sink(acc);
  run_simulation(config, profile, coeffs, sink);
  acc.finish(out);
  return out;
}

double remainder_proxy(const BlockFunctionals& funcs, double theta_prime,
                       bool left_quadrature) {
  const int kb = funcs.k_bullet;
  const double b = left_quadrature ? funcs.b_left(kb) : funcs.b(kb);
  return funcs.a(kb) - theta_prime * b - funcs.m(kb);
}

double theta_circ_search(const std::vector<BlockFunctionals>& replicates,
                         int grid_points) {
  if (replicates.empty()) {
    throw std::invalid_argument("theta_circ_search: no replicates");
  }
  const DiffusivityProfile& p = replicates.front().profile;
  double best_theta = p.theta_lo();
  double best = std::numeric_limits<double>::infinity();
  for (int g = 0; g <= grid_points; ++g) {
    const double theta =
        p.theta_lo() + (p.theta_hi() - p.theta_lo()) * g / grid_points;
    double mean = 0.0;
    for (const auto& f : replicates) mean += remainder_proxy(f, theta);
    mean /= static_cast<double>(replicates.size());
    if (std::abs(mean) < best) {
      best = std::abs(mean);
      best_theta = theta;
    }
  }
  return best_theta;
}

TailDiagnostic tail_diagnostic(const std::vector<BlockFunctionals>& replicates,
                               const std::vector<double>& alpha, double z,
                               double kernel_grad_norm_sq) {
  if (replicates.size() < 200) {
    throw std::invalid_argument("tail_diagnostic: need >= 200 replicates");
  }
  if (!(z > 0.0)) throw std::invalid_argument("tail_diagnostic: z <= 0");
  const BlockFunctionals& first = replicates.front();
  const int n = first.n;
  if (static_cast<int>(alpha.size()) != n) {
    throw std::invalid_argument("tail_diagnostic: alpha size mismatch");
  }
  const int kb = first.k_bullet;
  double norm_inf = 0.0, norm_l1 = 0.0;
  for (int i = 1; i <= n; ++i) {
    if (alpha[i - 1] < 0.0) {
      throw std::invalid_argument("tail_diagnostic: alpha must be >= 0");
    }
    if (i == kb && alpha[i - 1] != 0.0) {
      throw std::invalid_argument("tail_diagnostic: alpha[k_bullet] must be 0");
    }
    norm_inf = std::max(norm_inf, alpha[i - 1]);
    norm_l1 += alpha[i - 1];
  }
  if (norm_inf == 0.0) {
    throw std::invalid_argument("tail_diagnostic: alpha is zero");
  }

  const std::size_t R = replicates.size();
  std::vector<double> mean(n, 0.0);
  for (const auto& f : replicates) {
    for (int i = 0; i < n; ++i) mean[i] += f.B[i];
  }
  for (double& m : mean) m /= static_cast<double>(R);

  std::size_t hits = 0;
  for (const auto& f : replicates) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += alpha[i] * (f.B[i] - mean[i]);
    if (std::abs(s) >= z) ++hits;
  }
  const double emp = static_cast<double>(hits) / static_cast<double>(R);

  const double theta_lo = first.profile.theta_lo();
  const double delta = first.delta;
  const double T = first.horizon;
  const double denom = 2.0 * z + norm_l1 * T / theta_lo * kernel_grad_norm_sq /
                                     (delta * delta);
  const double bound = std::min(
      1.0, 2.0 * std::exp(-(theta_lo * theta_lo / (2.0 * norm_inf)) * z * z /
                          denom));
  const double se = std::sqrt(std::max(emp * (1.0 - emp), 1.0 / R) /
                              static_cast<double>(R));
  return TailDiagnostic{emp, bound, se};
}

std::string functionals_to_csv(const BlockFunctionals& funcs) {
  std::string out = "i,x_i,A,B\n";
  char line[128];
  for (int i = 1; i <= funcs.n; ++i) {
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g\n", i,
                  (i - 0.5) * funcs.delta, funcs.a(i), funcs.b(i));
    out += line;
  }
  return out;
}

}  // namespace heatcp
