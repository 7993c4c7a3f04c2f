#include "heatcp/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "heatcp/errors.hpp"
#include "heatcp/estimators.hpp"
#include "heatcp/functionals.hpp"
#include "heatcp/rng.hpp"
#include "heatcp/stats.hpp"
#include "heatcp/toy.hpp"

namespace heatcp {

void ExperimentPlan::validate() const {
  if (n_values.empty()) throw std::invalid_argument("plan: no n values");
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("plan: n values must be strictly increasing");
    }
  }
  if (replicates < 50) throw std::invalid_argument("plan: replicates < 50");
  if (estimator != "simultaneous" && estimator != "cusum-known" &&
      estimator != "toy") {
    throw std::invalid_argument("plan: unknown estimator '" + estimator + "'");
  }
  if (eta_schedule != "fixed" && eta_schedule != "power") {
    throw std::invalid_argument("plan: unknown eta schedule");
  }
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("plan: bad tau");
  if (modes_per_site < 10) {
    throw std::invalid_argument("plan: modes_per_site < 10");
  }
  if (steps_factor < 4) throw std::invalid_argument("plan: steps_factor < 4");
}

std::pair<double, double> ExperimentPlan::theta_at(int n) const {
  if (eta_schedule == "fixed") return {theta_minus, theta_plus};
  const double delta = 1.0 / static_cast<double>(n);
  const double half_eta = 0.5 * std::pow(delta, eta_beta);
  return {theta_star - half_eta, theta_star + half_eta};
}

ExperimentPlan plan_from_toml(const TomlLite& toml) {
  ExperimentPlan plan;
  plan.n_values.clear();
  for (double v : toml.array("n")) {
    plan.n_values.push_back(static_cast<int>(v));
  }
  plan.replicates = static_cast<int>(toml.integer("replicates"));
  plan.estimator = toml.string_or("estimator", "simultaneous");
  plan.theta_minus = toml.number_or("theta_minus", 1.0);
  plan.theta_plus = toml.number_or("theta_plus", 2.0);
  plan.eta_schedule = toml.string_or("eta", "fixed");
  plan.eta_beta = toml.number_or("eta_beta", 1.25);
  plan.theta_star = toml.number_or("theta_star", 1.0);
  plan.tau = toml.number("tau");
  plan.horizon = toml.number_or("horizon", 1.0);
  plan.theta_lo = toml.number_or("theta_lo", 0.5);
  plan.theta_hi = toml.number_or("theta_hi", 4.0);
  plan.modes_per_site = static_cast<int>(toml.integer_or("modes_per_site", 20));
  plan.steps_factor = static_cast<int>(toml.integer_or("steps_factor", 4));
  plan.no_circ = toml.boolean_or("no_circ", false);
  plan.toy_grid = toml.integer_or("toy_grid", 100000);
  plan.master_seed = static_cast<std::uint64_t>(toml.integer("master_seed"));
  plan.out_csv = toml.string_or("out_csv", "");
  plan.validate();
  return plan;
}

FitResult fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3) {
    throw std::invalid_argument("fit_loglog_slope: need >= 3 points");
  }
  std::vector<double> x, y;
  for (const auto& [delta, err] : pts) {
    if (!(delta > 0.0)) {
      throw std::invalid_argument("fit_loglog_slope: delta <= 0");
    }
    if (!(err > 0.0)) {
      throw NonPositiveError("fit_loglog_slope: non-positive error summary");
    }
    x.push_back(std::log(delta));
    y.push_back(std::log(err));
  }
  const double xbar = mean(x);
  const double ybar = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - xbar) * (x[i] - xbar);
    sxy += (x[i] - xbar) * (y[i] - ybar);
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = ybar + fit.slope * (x[i] - xbar);
    rss += (y[i] - pred) * (y[i] - pred);
  }
  const double dof = static_cast<double>(x.size()) - 2.0;
  fit.std_error = dof > 0.0 ? std::sqrt(rss / dof / sxx) : 0.0;
  return fit;
}

namespace {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mu;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct SizeWorkspace {
  DiffusivityProfile profile;
  ObservationCoeffs coeffs;
};

SizeWorkspace build_workspace(const ExperimentPlan& plan, int n, int threads) {
  const auto [tm, tp] = plan.theta_at(n);
  DiffusivityProfile profile(tm, tp, plan.tau, plan.theta_lo, plan.theta_hi);
  MeasurementGrid grid(n);
  MeasurementKernel kernel = MeasurementKernel::polynomial();
  const int modes = plan.modes_per_site * n;
  SpectralDecomposition decomp = decompose(profile, modes);

  ObservationCoeffs coeffs;
  coeffs.n = n;
  coeffs.mode_count = modes;
  coeffs.a.resize(static_cast<std::size_t>(n) * modes);
  coeffs.b.resize(static_cast<std::size_t>(n) * modes);
  coeffs.lambda.resize(modes);
  for (int k = 1; k <= modes; ++k) coeffs.lambda[k - 1] = decomp.eigenvalue(k);
  parallel_for(n, threads, [&](int idx) {
    SiteCoeffs sc = kernel_eigen_coeffs(decomp, kernel, grid, idx + 1);
    std::copy(sc.a.begin(), sc.a.end(),
              coeffs.a.begin() + static_cast<std::size_t>(idx) * modes);
    std::copy(sc.b.begin(), sc.b.end(),
              coeffs.b.begin() + static_cast<std::size_t>(idx) * modes);
  });
  return SizeWorkspace{profile, std::move(coeffs)};
}

void summarize(const std::vector<ReplicateRow>& rows, int n, double delta,
               SizeSummary& out) {
  std::vector<double> etm, etp, etau;
  out.n = n;
  out.delta = delta;
  out.failures = 0;
  for (const auto& r : rows) {
    if (r.n != n) continue;
    if (r.failed) {
      ++out.failures;
      continue;
    }
    etm.push_back(r.err_tm);
    etp.push_back(r.err_tp);
    etau.push_back(r.err_tau);
  }
  out.median_err_tm = median(etm);
  out.median_err_tp = median(etp);
  out.median_err_tau = median(etau);
  out.iqr_err_tm = quantile(etm, 0.75) - quantile(etm, 0.25);
  out.iqr_err_tp = quantile(etp, 0.75) - quantile(etp, 0.25);
  out.iqr_err_tau = quantile(etau, 0.75) - quantile(etau, 0.25);
  out.mean_err_tm = mean(etm);
  out.mean_err_tp = mean(etp);
  out.mean_err_tau = mean(etau);
}

std::optional<FitResult> try_fit(
    const std::vector<std::pair<double, double>>& pts) {
  try {
    return fit_loglog_slope(pts);
  } catch (const NonPositiveError&) {
    return std::nullopt;
  }
}

}  // namespace

RateReport run_plan(const ExperimentPlan& plan, int threads) {
  plan.validate();
  RateReport report;
  report.plan = plan;
  report.rows.resize(static_cast<std::size_t>(plan.n_values.size()) *
                     plan.replicates);

  std::size_t row_base = 0;
  for (int n : plan.n_values) {
    const auto [theta_m, theta_p] = plan.theta_at(n);
    if (plan.estimator == "toy") {
      parallel_for(plan.replicates, threads, [&, n, row_base](int rep) {
        ReplicateRow& row = report.rows[row_base + rep];
        row.n = n;
        row.rep = rep;
        row.seed = derive_seed(plan.master_seed, static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(rep));
        try {
          ToyConfig cfg;
          cfg.theta_minus = theta_m;
          cfg.theta_plus = theta_p;
          cfg.tau = plan.tau;
          cfg.n = n;
          cfg.n_x = plan.toy_grid;
          cfg.seed = row.seed;
          const auto dY = toy_simulate(cfg);
          const double tau_hat = toy_estimate_known_theta(dY, cfg);
          row.theta_minus_hat = theta_m;
          row.theta_plus_hat = theta_p;
          row.theta_circ_hat = 0.5 * (theta_m + theta_p);
          row.tau_hat = tau_hat;
          row.k_hat = static_cast<int>(std::lround(tau_hat * n));
          row.err_tau = std::abs(tau_hat - plan.tau);
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
        }
      });
    } else {
      SizeWorkspace ws = build_workspace(plan, n, threads);
      parallel_for(plan.replicates, threads, [&, n, row_base](int rep) {
        ReplicateRow& row = report.rows[row_base + rep];
        row.n = n;
        row.rep = rep;
        row.seed = derive_seed(plan.master_seed, static_cast<std::uint64_t>(n),
                               static_cast<std::uint64_t>(rep));
        try {
          SimulationConfig cfg;
          cfg.horizon = plan.horizon;
          cfg.time_steps = static_cast<std::int64_t>(plan.steps_factor) * n * n;
          cfg.mode_count = plan.modes_per_site * n;
          cfg.seed = row.seed;
          cfg.n = n;
          const BlockFunctionals funcs =
              simulate_functionals(cfg, ws.profile, ws.coeffs);
          if (plan.estimator == "simultaneous") {
            const EstimateResult est = estimate_simultaneous(
                funcs, plan.theta_lo, plan.theta_hi, !plan.no_circ);
            row.theta_minus_hat = est.theta_minus_hat;
            row.theta_plus_hat = est.theta_plus_hat;
            row.theta_circ_hat = est.theta_circ_hat;
            row.k_hat = est.k_hat;
            row.tau_hat = est.tau_hat;
          } else {  // cusum-known
            const CusumResult est =
                estimate_cusum_known_theta(funcs, theta_m, theta_p);
            row.theta_minus_hat = theta_m;
            row.theta_plus_hat = theta_p;
            row.theta_circ_hat = 0.5 * (theta_m + theta_p);
            row.k_hat = est.k_hat;
            row.tau_hat = est.tau_hat;
          }
          row.err_tm = std::abs(row.theta_minus_hat - theta_m);
          row.err_tp = std::abs(row.theta_plus_hat - theta_p);
          row.err_tau = std::abs(row.tau_hat - plan.tau);
        } catch (const std::exception& e) {
          row.failed = true;
          row.error = e.what();
        }
      });
    }
    row_base += static_cast<std::size_t>(plan.replicates);
  }

  std::size_t failures = 0;
  for (const auto& r : report.rows) {
    if (r.failed) ++failures;
  }
  if (failures * 100 > report.rows.size()) {
    throw Error("run_plan: more than 1% of replicates failed (" +
                std::to_string(failures) + "/" +
                std::to_string(report.rows.size()) + ")");
  }

  report.per_n.resize(plan.n_values.size());
  std::vector<std::pair<double, double>> tm_med, tp_med, tau_med;
  std::vector<std::pair<double, double>> tm_mean, tp_mean, tau_mean;
  for (std::size_t s = 0; s < plan.n_values.size(); ++s) {
    SizeSummary& sum = report.per_n[s];
    summarize(report.rows, plan.n_values[s], 1.0 / plan.n_values[s], sum);
    tm_med.emplace_back(sum.delta, sum.median_err_tm);
    tp_med.emplace_back(sum.delta, sum.median_err_tp);
    tau_med.emplace_back(sum.delta, sum.median_err_tau);
    tm_mean.emplace_back(sum.delta, sum.mean_err_tm);
    tp_mean.emplace_back(sum.delta, sum.mean_err_tp);
    tau_mean.emplace_back(sum.delta, sum.mean_err_tau);
  }
  if (plan.n_values.size() >= 3) {
    report.slope_tau_median = try_fit(tau_med);
    report.slope_tau_mean = try_fit(tau_mean);
    if (plan.estimator == "simultaneous") {
      report.slope_tm_median = try_fit(tm_med);
      report.slope_tp_median = try_fit(tp_med);
      report.slope_tm_mean = try_fit(tm_mean);
      report.slope_tp_mean = try_fit(tp_mean);
    }
  }
  return report;
}

std::string replicate_rows_csv(const std::vector<ReplicateRow>& rows) {
  std::string out =
      "n,rep,seed,theta_minus_hat,theta_plus_hat,theta_circ_hat,k_hat,tau_hat,"
      "err_tm,err_tp,err_tau\n";
  char line[360];
  for (const auto& r : rows) {
    if (r.failed) continue;
    std::snprintf(line, sizeof(line),
                  "%d,%d,%llu,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g\n",
                  r.n, r.rep, static_cast<unsigned long long>(r.seed),
                  r.theta_minus_hat, r.theta_plus_hat, r.theta_circ_hat,
                  r.k_hat, r.tau_hat, r.err_tm, r.err_tp, r.err_tau);
    out += line;
  }
  return out;
}

}  // namespace heatcp
