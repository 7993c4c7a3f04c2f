// Acceptance suite: one criterion per invocation (argument 1..9 or "all"),
// one pass/fail line per criterion on stdout.  Exit code 0 iff every
// requested criterion passed.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "heatcp/errors.hpp"
#include "heatcp/estimators.hpp"
#include "heatcp/fem.hpp"
#include "heatcp/functionals.hpp"
#include "heatcp/harness.hpp"
#include "heatcp/io.hpp"
#include "heatcp/limit_law.hpp"
#include "heatcp/rng.hpp"
#include "heatcp/spectrum.hpp"
#include "heatcp/stats.hpp"
#include "heatcp/toy.hpp"

#ifndef HEATCP_CLI_PATH
#define HEATCP_CLI_PATH "heatcp"
#endif
#ifndef HEATCP_PLAN_DIR
#define HEATCP_PLAN_DIR "plans"
#endif

using namespace heatcp;
using clock_type = std::chrono::steady_clock;

namespace {

int hardware_threads() {
  const int hc = static_cast<int>(std::thread::hardware_concurrency());
  return hc > 0 ? hc : 1;
}

// Stated runtime limits presume an 8-core box (criterion 3 says so
// explicitly); scale them up proportionally on smaller machines.
double scaled_limit(double stated_seconds) {
  const double cores = static_cast<double>(hardware_threads());
  return stated_seconds * std::max(1.0, 8.0 / cores);
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int threads = std::min(hardware_threads(), count);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- criterion 1
Outcome criterion1() {
  Outcome out;
  constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
  for (double c : {1.0, 2.5}) {
    DiffusivityProfile p(c, c, 0.5, 0.5, 4.0);
    auto d = decompose(p, 20);
    for (int k = 1; k <= 20; ++k) {
      const double rel = std::abs(d.eigenvalue(k) / (c * kPi2 * k * k) - 1.0);
      out.require(rel < 1e-10, "constant spectrum rel err " +
                                   std::to_string(rel) + " at k=" +
                                   std::to_string(k));
      if (!out.pass) return out;
    }
  }

  const std::vector<double> thetas{0.5, 1.0, 2.0, 4.0};
  const std::vector<double> taus{0.3, 0.5, 1.0 / 3.0};
  struct Job {
    double tm, tp, tau;
  };
  std::vector<Job> jobs;
  for (double tm : thetas) {
    for (double tp : thetas) {
      for (double tau : taus) jobs.push_back({tm, tp, tau});
    }
  }
  std::atomic<int> bad{0};
  std::vector<double> worst(jobs.size(), 0.0);
  parallel_for(static_cast<int>(jobs.size()), [&](int idx) {
    const Job& j = jobs[idx];
    DiffusivityProfile p(j.tm, j.tp, j.tau, 0.5, 4.0);
    auto d = decompose(p, 50);
    auto f = fem_oracle(p, 10000, 50);
    double w = 0.0;
    for (int k = 1; k <= 50; ++k) {
      w = std::max(w, std::abs(d.eigenvalue(k) / f.eigenvalue(k) - 1.0));
    }
    worst[idx] = w;
    if (w >= 1e-4) bad.fetch_add(1);
  });
  double overall = 0.0;
  for (double w : worst) overall = std::max(overall, w);
  out.require(bad.load() == 0,
              "fem disagreement up to " + std::to_string(overall));
  out.note("48-profile fem cross-check worst rel " + std::to_string(overall));
  return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome criterion2() {
  Outcome out;
  DiffusivityProfile p(1.0, 1.0, 0.35, 1.0, 2.0);
  MeasurementGrid grid(10);
  auto kernel = MeasurementKernel::polynomial();
  auto decomp = decompose(p, 200);
  auto coeffs = build_observation_coeffs(decomp, kernel, grid);
  const int kb = grid.k_bullet(p);
  const int reps = 1000;
  std::vector<std::vector<double>> bs(10, std::vector<double>(reps));
  parallel_for(reps, [&](int r) {
    SimulationConfig cfg;
    cfg.horizon = 1.0;
    cfg.time_steps = 400;
    cfg.mode_count = 200;
    cfg.seed = derive_seed(102, 10, r);
    cfg.n = 10;
    auto f = simulate_functionals(cfg, p, coeffs);
    for (int i = 0; i < 10; ++i) bs[i][r] = f.B[i];
  });
  const double base = 0.5 * kernel.norm_d1_sq() * 100.0;  // T/(2 theta) ||K'||^2 delta^-2
  double worst_dev = 0.0;
  for (int i = 1; i <= 10; ++i) {
    if (i == kb) continue;
    const double m = mean(bs[i - 1]);
    const double se = std::sqrt(sample_variance(bs[i - 1]) / reps);
    out.require(m < base + 3.0 * se,
                "site " + std::to_string(i) + " mean high: " + std::to_string(m));
    out.require(m > base - 0.25 - 3.0 * se,
                "site " + std::to_string(i) + " mean low: " + std::to_string(m));
    worst_dev = std::max(worst_dev, std::abs(m - base + 0.125));
  }
  out.note("E[I] deviations from T/(2theta)||K'||^2/delta^2 within " +
           std::to_string(worst_dev));
  return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome criterion3() {
  Outcome out;
  auto plan = plan_from_toml(TomlLite::parse_file(
      std::string(HEATCP_PLAN_DIR) + "/rates.toml"));
  auto report = run_plan(plan, hardware_threads());

  auto in_band = [&](const std::optional<FitResult>& fit, double lo, double hi,
                     const char* name) {
    if (!fit.has_value()) {
      out.require(false, std::string(name) + " slope unavailable "
                                             "(non-positive medians)");
      return;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s slope %.3f +- %.3f", name, fit->slope,
                  fit->std_error);
    out.note(buf);
    out.require(fit->slope >= lo && fit->slope <= hi,
                std::string(name) + " slope outside [" + std::to_string(lo) +
                    ", " + std::to_string(hi) + "]");
  };
  in_band(report.slope_tm_median, 1.2, 1.8, "theta_minus");
  in_band(report.slope_tp_median, 1.2, 1.8, "theta_plus");
  in_band(report.slope_tau_median, 0.7, 1.3, "tau");
  if (report.slope_tau_mean.has_value()) {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "diagnostic tau mean-slope %.3f +- %.3f",
                  report.slope_tau_mean->slope, report.slope_tau_mean->std_error);
    out.note(buf);
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome criterion4() {
  Outcome out;
  auto base_plan = plan_from_toml(TomlLite::parse_file(
      std::string(HEATCP_PLAN_DIR) + "/ablation_default.toml"));
  auto ablated_plan = plan_from_toml(TomlLite::parse_file(
      std::string(HEATCP_PLAN_DIR) + "/ablation_nocirc.toml"));
  auto base = run_plan(base_plan, hardware_threads());
  auto ablated = run_plan(ablated_plan, hardware_threads());

  auto min_side_slope = [&](const RateReport& r, FitResult& fit) {
    if (!r.slope_tm_median.has_value() || !r.slope_tp_median.has_value()) {
      return false;
    }
    fit = r.slope_tm_median->slope <= r.slope_tp_median->slope
              ? *r.slope_tm_median
              : *r.slope_tp_median;
    return true;
  };
  FitResult fb, fa;
  out.require(min_side_slope(base, fb), "default slope unavailable");
  out.require(min_side_slope(ablated, fa), "no-circ slope unavailable");
  if (!out.pass) return out;

  const double drop = fb.slope - fa.slope;
  const double combined =
      std::sqrt(fb.std_error * fb.std_error + fa.std_error * fa.std_error);
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "default %.3f +- %.3f, no-circ %.3f +- %.3f, drop %.3f vs 2SE %.3f",
                fb.slope, fb.std_error, fa.slope, fa.std_error, drop,
                2.0 * combined);
  out.note(buf);
  out.require(drop >= 2.0 * combined,
              "diffusivity slope drop below 2 combined SE");
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome criterion5() {
  Outcome out;
  ToyConfig cfg;
  cfg.theta_minus = 1.0 - 0.025;
  cfg.theta_plus = 1.0 + 0.025;
  cfg.tau = 0.5;
  cfg.n = 100;  // sigma = n^{-3/2} = 1e-3 = o(eta)
  cfg.n_x = 100000;
  const int reps = 2000;
  std::vector<double> rescaled(reps);
  parallel_for(reps, [&](int r) {
    ToyConfig c = cfg;
    c.seed = derive_seed(505, 100, r);
    auto dY = toy_simulate(c);
    rescaled[r] = toy_rescaled_error(toy_estimate_known_theta(dY, c), c);
  });
  ArgminLawConfig ocfg;
  ocfg.half_width = 40.0;
  ocfg.step = 0.02;
  ocfg.replicates = 100000;
  ocfg.seed = 92;
  auto oracle = sample_argmin(ocfg);
  const double ks = ks_two_sample(rescaled, oracle);
  out.note("two-sample KS " + std::to_string(ks));
  out.require(ks < 0.08, "KS distance >= 0.08");
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome criterion6() {
  Outcome out;
  const int n = 200;
  const double delta = 1.0 / n;
  const double eta = std::pow(delta, 1.25);
  const double theta_star = 1.0;
  const double T = 1.0;
  ExperimentPlan plan;
  plan.n_values = {n};
  plan.replicates = 500;
  plan.estimator = "cusum-known";
  plan.eta_schedule = "power";
  plan.eta_beta = 1.25;
  plan.theta_star = theta_star;
  plan.tau = 0.35;
  plan.horizon = T;
  plan.theta_lo = 0.5;
  plan.theta_hi = 4.0;
  plan.modes_per_site = 10;
  plan.master_seed = 606;
  auto report = run_plan(plan, hardware_threads());
  std::vector<double> tau_hats;
  for (const auto& r : report.rows) {
    if (!r.failed) tau_hats.push_back(r.tau_hat);
  }
  auto kernel = MeasurementKernel::polynomial();
  auto rescaled = normalize_change_point_errors(
      tau_hats, plan.tau, T, kernel.norm_d1_sq(), eta, delta, theta_star);

  ArgminLawConfig ocfg;
  ocfg.half_width = 40.0;
  ocfg.step = 0.02;
  ocfg.replicates = 100000;
  ocfg.seed = 93;
  auto oracle = sample_argmin(ocfg);
  const double ks = ks_two_sample(rescaled, oracle);
  out.note("two-sample KS " + std::to_string(ks) + " over " +
           std::to_string(rescaled.size()) + " replicates");
  out.require(ks < 0.12, "KS distance >= 0.12");
  return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome criterion7() {
  Outcome out;
  DiffusivityProfile p(1.0, 2.0, 0.35, 1.0, 2.0);
  const int n = 50;
  MeasurementGrid grid(n);
  auto kernel = MeasurementKernel::polynomial();
  auto decomp = decompose(p, 10 * n);
  auto coeffs = build_observation_coeffs(decomp, kernel, grid);
  const int kb = grid.k_bullet(p);
  const int reps = 500;
  std::vector<BlockFunctionals> funcs(reps, BlockFunctionals{0, 0, 0, 0, p,
                                                             {}, {}, {},
                                                             std::nullopt});
  parallel_for(reps, [&](int r) {
    SimulationConfig cfg;
    cfg.horizon = 1.0;
    cfg.time_steps = 4 * static_cast<std::int64_t>(n) * n;
    cfg.mode_count = 10 * n;
    cfg.seed = derive_seed(707, n, r);
    cfg.n = n;
    funcs[r] = simulate_functionals(cfg, p, coeffs);
  });

  const double kp = kernel.norm_d1_sq();
  // uniform weights off the change point at twice the empirical spread
  {
    std::vector<double> alpha(n, 1.0);
    alpha[kb - 1] = 0.0;
    std::vector<double> mean_b(n, 0.0);
    for (const auto& f : funcs) {
      for (int i = 0; i < n; ++i) mean_b[i] += f.B[i];
    }
    for (double& v : mean_b) v /= reps;
    std::vector<double> sums;
    for (const auto& f : funcs) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += alpha[i] * (f.B[i] - mean_b[i]);
      sums.push_back(s);
    }
    const double z = 2.0 * std::sqrt(sample_variance(sums));
    auto t = tail_diagnostic(funcs, alpha, z, kp);
    char buf[140];
    std::snprintf(buf, sizeof(buf), "uniform alpha: empirical %.4f bound %.4f",
                  t.empirical, t.bound);
    out.note(buf);
    out.require(t.empirical <= t.bound + 3.0 * t.std_error,
                "uniform-alpha tail above the Bernstein bound");
  }
  // single site, large z
  {
    std::vector<double> alpha(n, 0.0);
    alpha[0] = 1.0;
    auto t = tail_diagnostic(funcs, alpha, 1e9, kp);
    out.require(t.empirical <= t.bound + 3.0 * t.std_error,
                "single-site tail above the bound");
  }
  // z near zero: bound clips at one
  {
    std::vector<double> alpha(n, 1.0);
    alpha[kb - 1] = 0.0;
    auto t = tail_diagnostic(funcs, alpha, 1e-9, kp);
    out.require(t.empirical <= 1.0 && t.bound == 1.0,
                "z->0 case not dominated");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome criterion8() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() /
      ("heatcp_det_" + std::to_string(splitmix64(
                           std::chrono::steady_clock::now().time_since_epoch()
                               .count())));
  fs::create_directories(dir);
  const std::string cli = HEATCP_CLI_PATH;

  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  auto same_twice = [&](const std::string& args_template,
                        const std::vector<std::string>& outputs,
                        const std::string& what) {
    std::vector<std::string> first;
    for (int round = 0; round < 2; ++round) {
      std::string args = args_template;
      const int rc = run(args);
      out.require(rc == 0, what + ": exit code " + std::to_string(rc));
      if (!out.pass) return;
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        const std::string content = read_file(outputs[i]);
        if (round == 0) {
          first.push_back(content);
        } else {
          out.require(content == first[i], what + ": bytes differ for " +
                                               outputs[i]);
        }
      }
    }
  };

  const std::string obs = (dir / "obs.csv").string();
  const std::string est = (dir / "est.json").string();
  const std::string spec_json = (dir / "spec.json").string();
  const std::string toy_csv = (dir / "toy.csv").string();
  const std::string ll_csv = (dir / "ll.csv").string();
  const std::string ll_json = (dir / "ll.json").string();
  const std::string report = (dir / "report.json").string();
  const std::string rows = (dir / "rows.csv").string();

  same_twice("spectrum --theta-minus 1 --theta-plus 4 --tau 0.5 --modes 8 --out " +
                 spec_json,
             {spec_json}, "spectrum");
  same_twice("simulate --n 6 --theta-minus 1 --theta-plus 2 --tau 0.35 "
             "--seed 11 --brownian --out " + obs,
             {obs}, "simulate");
  same_twice("estimate --in " + obs + " --out " + est, {est}, "estimate");
  same_twice("toy --n 40 --n-x 20000 --reps 100 --seed 3 --out " + toy_csv,
             {toy_csv}, "toy");
  same_twice("limit-law --half-width 25 --step 0.02 --reps 2000 --seed 5 "
             "--out " + ll_csv + " --summary " + ll_json,
             {ll_csv, ll_json}, "limit-law");
  same_twice("mc-rates --plan " + std::string(HEATCP_PLAN_DIR) +
                 "/rates_tiny.toml --out " + report + " --csv " + rows,
             {report, rows}, "mc-rates");

  fs::remove_all(dir);
  return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome criterion9() {
  Outcome out;
  DiffusivityProfile p(1.0, 2.0, 1.0 / 3.0, 0.5, 4.0);
  const int n = 10;
  MeasurementGrid grid(n);
  auto kernel = MeasurementKernel::polynomial();
  auto decomp = decompose(p, 200);
  auto coeffs = build_observation_coeffs(decomp, kernel, grid);
  const int kb = grid.k_bullet(p);

  double worst_identity = 0.0;
  double worst_trace_gap = 0.0;
  int argmax_mismatches = 0;
  for (int rep = 0; rep < 100; ++rep) {
    SimulationConfig cfg;
    cfg.horizon = 1.0;
    cfg.time_steps = 400;
    cfg.mode_count = 200;
    cfg.seed = derive_seed(909, n, rep);
    cfg.n = n;
    cfg.with_brownian = true;
    auto f = simulate_functionals(cfg, p, coeffs);

    for (int i = 1; i <= n; ++i) {
      if (i == kb) continue;
      const double theta = p.value(grid.site(i));
      const double rel =
          std::abs(f.a(i) - theta * f.b_left(i) - f.m(i)) / std::abs(f.a(i));
      worst_identity = std::max(worst_identity, rel);
    }

    auto z = centered_trace(f, 1.0, 2.0, kb);
    auto cu = estimate_cusum_known_theta(f, 1.0, 2.0, QvVariant::kLeft);
    int z_argmax = 1;
    for (int k = 2; k <= n; ++k) {
      if (z[k - 1] > z[z_argmax - 1]) z_argmax = k;
    }
    if (z_argmax != cu.k_hat) ++argmax_mismatches;
    double scale = 0.0;
    for (double v : z) scale = std::max(scale, std::abs(v));
    for (int k = 1; k <= n; ++k) {
      const double direct = cu.trace[k - 1] - cu.trace[kb - 1];
      worst_trace_gap = std::max(
          worst_trace_gap, std::abs((z[k - 1] - z[kb - 1]) - direct) / scale);
    }
  }
  char buf[180];
  std::snprintf(buf, sizeof(buf),
                "identity worst rel %.2e, trace gap %.2e, argmax mismatches %d",
                worst_identity, worst_trace_gap, argmax_mismatches);
  out.note(buf);
  out.require(worst_identity <= 1e-10, "semimartingale identity above 1e-10");
  out.require(argmax_mismatches == 0, "centered-trace argmax mismatch");
  out.require(worst_trace_gap <= 1e-10, "trace identity above 1e-10 relative");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double stated_seconds;
  bool scale_by_cores;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "spectrum correctness", 10.0, true, criterion1},
    {2, "quadratic-variation moment oracle", 120.0, false, criterion2},
    {3, "rate reproduction", 3600.0, true, criterion3},
    {4, "nuisance ablation", 3600.0, true, criterion4},
    {5, "toy limit law", 60.0, false, criterion5},
    {6, "change-point limit theorem", 7200.0, true, criterion6},
    {7, "concentration sanity", 600.0, true, criterion7},
    {8, "byte-identical reruns", 600.0, true, criterion8},
    {9, "identity tests", 600.0, true, criterion9},
};

bool run_criterion(const Criterion& c) {
  const auto t0 = clock_type::now();
  Outcome out;
  try {
    out = c.fn();
  } catch (const std::exception& e) {
    out.pass = false;
    out.note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
  const double limit = c.scale_by_cores ? scaled_limit(c.stated_seconds)
                                        : c.stated_seconds;
  if (secs > limit) {
    out.pass = false;
    out.note("runtime " + std::to_string(secs) + " s above limit " +
             std::to_string(limit) + " s");
  }
  std::printf("[%s] criterion %d: %s (%.1f s%s)%s%s\n",
              out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
              c.scale_by_cores && hardware_threads() < 8 ? ", limit scaled to core count"
                                                         : "",
              out.detail.empty() ? "" : " -- ", out.detail.c_str());
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc < 2 || std::string(argv[1]) == "all") {
    for (const auto& c : kCriteria) which.push_back(c.id);
  } else {
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  }
  bool all_pass = true;
  for (int id : which) {
    bool found = false;
    for (const auto& c : kCriteria) {
      if (c.id == id) {
        found = true;
        all_pass = run_criterion(c) && all_pass;
      }
    }
    if (!found) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 1;
    }
  }
  return all_pass ? 0 : 1;
}
