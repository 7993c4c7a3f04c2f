#ifndef HEATCP_SIMULATE_HPP
#define HEATCP_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "heatcp/kernel.hpp"
#include "heatcp/profile.hpp"
#include "heatcp/spectrum.hpp"

namespace heatcp {

// Exact-in-law spectral simulation of the stochastic heat equation with
// zero initial condition, observed through the kernels on a uniform time
// grid t_j = j T / N_t.
struct SimulationConfig {
  double horizon = 1.0;        // T
  std::int64_t time_steps = 0; // N_t; must be >= 4 n^2 (time-quadrature bias)
  int mode_count = 0;          // M;   must be >= 10 n (Parseval tail)
  std::uint64_t seed = 0;
  int n = 0;                   // measurement sites
  bool with_brownian = false;  // also store dB_{delta,i} increments

  void validate() const;
};

// Per-mode coefficients of all sites, a[i][k], b[i][k] flattened.
struct ObservationCoeffs {
  int n = 0;
  int mode_count = 0;
  std::vector<double> a;  // n x M row-major
  std::vector<double> b;  // n x M row-major
  std::vector<double> lambda;

  double a_at(int i, int k) const { return a[(i - 1) * mode_count + (k - 1)]; }
  double b_at(int i, int k) const { return b[(i - 1) * mode_count + (k - 1)]; }
};

ObservationCoeffs build_observation_coeffs(const SpectralDecomposition& decomp,
                                           const MeasurementKernel& kernel,
                                           const MeasurementGrid& grid);

struct ObservationSet {
  SimulationConfig config;
  DiffusivityProfile profile;
  std::vector<double> times;  // N_t + 1 entries
  // row-major n x (N_t+1)
  std::vector<double> X;
  std::vector<double> XD;
  // Brownian increments dB[i][j] = B_i(t_j) - B_i(t_{j-1}), j = 1..N_t,
  // stored n x N_t.
  std::vector<double> dB;
  // Drift observable <Delta_theta X(t_j), K_{delta,k.}> at the change-point
  // block, N_t + 1 entries.  Off the change point the same observable is
  // theta_i X^D_i, so only this block needs its own column.
  std::vector<double> xtheta_kb;

  double x(int i, std::int64_t j) const {
    return X[(i - 1) * (config.time_steps + 1) + j];
  }
  double xd(int i, std::int64_t j) const {
    return XD[(i - 1) * (config.time_steps + 1) + j];
  }
  double db(int i, std::int64_t j) const {  // j = 1..N_t
    return dB[(i - 1) * config.time_steps + (j - 1)];
  }
  bool has_brownian() const { return config.with_brownian; }
};

ObservationSet simulate(const SimulationConfig& config,
                        const DiffusivityProfile& profile,
                        const ObservationCoeffs& coeffs);

// Streaming per-step visitor; receives columns for steps j0..j0+count-1.
class StepSink {
 public:
  virtual ~StepSink() = default;
  // Column-major blocks: X(i, jj) at index (jj * n + i - 1).  xtheta holds
  // the change-point drift observable, one value per step.  X is null when
  // wants_paths() returns false.
  virtual void on_block(std::int64_t j0, int count, int n, const double* X,
                        const double* XD, const double* dB,
                        const double* xtheta) = 0;
  virtual bool wants_paths() const { return true; }
};

// Runs the simulation pushing steps j = 1..N_t into the sink.  simulate()
// and the fused functional path share this engine, so their outputs agree
// bit for bit.
void run_simulation(const SimulationConfig& config,
                    const DiffusivityProfile& profile,
                    const ObservationCoeffs& coeffs, StepSink& sink);

// Brownian increments of B_{delta,i} for one site, replayed from the same
// counter-based noise stream that drives the modes.
std::vector<double> brownian_increments_for_site(const SimulationConfig& config,
                                                 const ObservationCoeffs& coeffs,
                                                 int i);

// Joint per-step OU constants: X update x' = decay x + wiener_load dW + extra z2,
// with dW ~ N(0, dt) and z2 standard normal.  Exposed for the covariance test.
struct OuStepLaw {
  double decay;        // e^{-lambda dt}
  double wiener_load;  // Cov(xi, dW)/dt
  double extra_sd;     // sqrt(Var(xi) - Cov^2/dt)
  double xi_var;       // Var(xi) = (1 - e^{-2 lambda dt})/(2 lambda)
};

OuStepLaw ou_step_law(double lambda, double dt);

}  // namespace heatcp

#endif
