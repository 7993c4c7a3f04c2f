#ifndef HEATCP_HARNESS_HPP
#define HEATCP_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heatcp/toml_lite.hpp"

namespace heatcp {

// Replicated-experiment schedule.  The eta schedule is either "fixed"
// (theta_minus/theta_plus as given) or "power" with
// theta_pm(delta) = theta_star -+/+ delta^beta / 2.
struct ExperimentPlan {
  std::vector<int> n_values;
  int replicates = 200;
  std::string estimator = "simultaneous";  // simultaneous | cusum-known | toy
  double theta_minus = 1.0;
  double theta_plus = 2.0;
  std::string eta_schedule = "fixed";  // fixed | power
  double eta_beta = 1.25;
  double theta_star = 1.0;
  double tau = 0.35;
  double horizon = 1.0;
  double theta_lo = 0.5;
  double theta_hi = 4.0;
  int modes_per_site = 20;  // M = modes_per_site * n
  int steps_factor = 4;     // N_t = steps_factor * n^2
  bool no_circ = false;
  std::int64_t toy_grid = 100000;  // toy estimator only
  std::uint64_t master_seed = 1;
  std::string out_csv;  // optional per-replicate CSV path

  void validate() const;
  // Diffusivity values at resolution delta = 1/n under the eta schedule.
  std::pair<double, double> theta_at(int n) const;
};

ExperimentPlan plan_from_toml(const TomlLite& toml);

struct ReplicateRow {
  int n = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  double theta_minus_hat = 0.0;
  double theta_plus_hat = 0.0;
  double theta_circ_hat = 0.0;
  int k_hat = 0;
  double tau_hat = 0.0;
  double err_tm = 0.0;
  double err_tp = 0.0;
  double err_tau = 0.0;
  bool failed = false;
  std::string error;
};

struct SizeSummary {
  int n = 0;
  double delta = 0.0;
  double median_err_tm = 0.0, median_err_tp = 0.0, median_err_tau = 0.0;
  double iqr_err_tm = 0.0, iqr_err_tp = 0.0, iqr_err_tau = 0.0;
  double mean_err_tm = 0.0, mean_err_tp = 0.0, mean_err_tau = 0.0;
  int failures = 0;
};

struct FitResult {
  double slope = 0.0;
  double std_error = 0.0;
};

// Ordinary least squares of log(error) on log(delta); std error from
// residuals.  Throws NonPositiveError when a summary is <= 0.
FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& pts);

struct RateReport {
  ExperimentPlan plan;
  std::vector<SizeSummary> per_n;
  // theta slopes are absent for estimators that do not produce them.
  std::optional<FitResult> slope_tm_median, slope_tp_median;
  std::optional<FitResult> slope_tau_median;
  std::optional<FitResult> slope_tm_mean, slope_tp_mean, slope_tau_mean;
  std::vector<ReplicateRow> rows;
};

RateReport run_plan(const ExperimentPlan& plan, int threads = 0);

std::string replicate_rows_csv(const std::vector<ReplicateRow>& rows);

}  // namespace heatcp

#endif
