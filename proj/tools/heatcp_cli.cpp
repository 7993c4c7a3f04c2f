// Command-line front end: simulate | estimate | toy | limit-law | mc-rates |
// spectrum.  All results go to files; stdout carries a short human summary.
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
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
#include "json.hpp"

namespace {

using nlohmann::json;

struct ProfileFlags {
  double theta_minus = 1.0;
  double theta_plus = 2.0;
  double tau = 0.5;
  double theta_lo = 0.5;
  double theta_hi = 4.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--theta-minus", theta_minus, "diffusivity left of tau");
    cmd->add_option("--theta-plus", theta_plus, "diffusivity right of tau");
    cmd->add_option("--tau", tau, "change point in (0,1)");
    cmd->add_option("--theta-lo", theta_lo, "lower band endpoint");
    cmd->add_option("--theta-hi", theta_hi, "upper band endpoint");
  }

  heatcp::DiffusivityProfile build() const {
    return heatcp::DiffusivityProfile(theta_minus, theta_plus, tau, theta_lo,
                                      theta_hi);
  }

  json echo() const {
    return json{{"theta_minus", theta_minus},
                {"theta_plus", theta_plus},
                {"tau", tau},
                {"theta_lo", theta_lo},
                {"theta_hi", theta_hi}};
  }
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_spectrum(const ProfileFlags& pf, int modes, int fem_cells,
                 const std::string& out_path) {
  auto profile = pf.build();
  auto decomp = heatcp::decompose(profile, modes);
  json out{{"config", pf.echo()}, {"modes", modes}};
  out["eigenvalues"] = json::array();
  for (int k = 1; k <= modes; ++k) {
    out["eigenvalues"].push_back(decomp.eigenvalue(k));
    std::printf("%s\n", fmt17(decomp.eigenvalue(k)).c_str());
  }
  if (fem_cells > 0) {
    auto fem = heatcp::fem_oracle(profile, fem_cells, modes);
    out["fem_eigenvalues"] = json::array();
    double worst = 0.0;
    for (int k = 1; k <= modes; ++k) {
      out["fem_eigenvalues"].push_back(fem.eigenvalue(k));
      worst = std::max(worst, std::abs(decomp.eigenvalue(k) /
                                           fem.eigenvalue(k) - 1.0));
    }
    out["fem_worst_rel_disagreement"] = worst;
    std::printf("fem cross-check worst rel disagreement: %.3e\n", worst);
  }
  if (!out_path.empty()) {
    heatcp::write_file(out_path, out.dump(2) + "\n");
    std::printf("wrote %s\n", out_path.c_str());
  }
  return 0;
}

int run_simulate(const ProfileFlags& pf, int n, double horizon,
                 std::int64_t steps, int modes, std::uint64_t seed,
                 bool with_brownian, const std::string& out_path) {
  auto profile = pf.build();
  heatcp::MeasurementGrid grid(n);
  auto kernel = heatcp::MeasurementKernel::polynomial();
  if (modes <= 0) modes = 20 * n;
  if (steps <= 0) steps = 4 * static_cast<std::int64_t>(n) * n;
  auto decomp = heatcp::decompose(profile, modes);
  auto coeffs = heatcp::build_observation_coeffs(decomp, kernel, grid);
  heatcp::SimulationConfig cfg;
  cfg.horizon = horizon;
  cfg.time_steps = steps;
  cfg.mode_count = modes;
  cfg.seed = seed;
  cfg.n = n;
  cfg.with_brownian = with_brownian;
  auto obs = heatcp::simulate(cfg, profile, coeffs);
  heatcp::write_file(out_path, heatcp::observation_set_to_csv(obs));
  std::printf("simulated n=%d steps=%lld modes=%d seed=%llu -> %s\n", n,
              static_cast<long long>(steps), modes,
              static_cast<unsigned long long>(seed), out_path.c_str());
  return 0;
}

int run_estimate(const std::string& in_path, const std::string& out_path,
                 bool no_circ, bool known, double known_tm, double known_tp,
                 const std::string& funcs_path) {
  auto obs = heatcp::observation_set_from_csv(heatcp::read_file(in_path));
  auto funcs = heatcp::compute_functionals(obs);
  if (!funcs_path.empty()) {
    heatcp::write_file(funcs_path, heatcp::functionals_to_csv(funcs));
  }
  json echo{{"input", in_path},
            {"no_circ", no_circ},
            {"known", known},
            {"n", obs.config.n},
            {"seed", obs.config.seed},
            {"band", json{{"theta_lo", obs.profile.theta_lo()},
                          {"theta_hi", obs.profile.theta_hi()}}}};

  heatcp::EstimateResult result;
  if (known) {
    auto cu = heatcp::estimate_cusum_known_theta(funcs, known_tm, known_tp);
    result.theta_minus_hat = known_tm;
    result.theta_plus_hat = known_tp;
    result.theta_circ_hat = 0.5 * (known_tm + known_tp);
    result.k_hat = cu.k_hat;
    result.tau_hat = cu.tau_hat;
    result.profile = cu.trace;
  } else {
    result = heatcp::estimate_simultaneous(funcs, obs.profile.theta_lo(),
                                           obs.profile.theta_hi(), !no_circ);
  }
  heatcp::write_file(out_path,
                     heatcp::estimate_result_to_json(result, echo.dump()));
  std::printf("k_hat=%d tau_hat=%s theta_minus_hat=%s theta_plus_hat=%s -> %s\n",
              result.k_hat, fmt17(result.tau_hat).c_str(),
              fmt17(result.theta_minus_hat).c_str(),
              fmt17(result.theta_plus_hat).c_str(), out_path.c_str());
  return 0;
}

int run_toy(const heatcp::ToyConfig& cfg, int replicates,
            const std::string& out_path) {
  std::string csv = "rep,tau_hat,rescaled_error\n";
  for (int r = 0; r < replicates; ++r) {
    heatcp::ToyConfig c = cfg;
    c.seed = heatcp::derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.n),
                                 static_cast<std::uint64_t>(r));
    const auto dY = heatcp::toy_simulate(c);
    const double tau_hat = heatcp::toy_estimate_known_theta(dY, c);
    csv += std::to_string(r) + "," + fmt17(tau_hat) + "," +
           fmt17(heatcp::toy_rescaled_error(tau_hat, c)) + "\n";
  }
  heatcp::write_file(out_path, csv);
  std::printf("toy: %d replicates -> %s\n", replicates, out_path.c_str());
  return 0;
}

int run_limit_law(const heatcp::ArgminLawConfig& cfg,
                  const std::string& out_path,
                  const std::string& summary_path) {
  auto samples = heatcp::sample_argmin(cfg);
  std::string csv = "rep,argmin\n";
  for (std::size_t r = 0; r < samples.size(); ++r) {
    csv += std::to_string(r) + "," + fmt17(samples[r]) + "\n";
  }
  heatcp::write_file(out_path, csv);
  json echo{{"half_width", cfg.half_width},
            {"step", cfg.step},
            {"replicates", cfg.replicates},
            {"seed", cfg.seed}};
  if (!summary_path.empty()) {
    heatcp::write_file(summary_path,
                       heatcp::sample_summary_json(samples, echo.dump()));
  }
  std::printf("limit-law: %lld samples, median |argmin| = %s -> %s\n",
              static_cast<long long>(cfg.replicates),
              fmt17(heatcp::median([&] {
                std::vector<double> a;
                a.reserve(samples.size());
                for (double v : samples) a.push_back(std::abs(v));
                return a;
              }())).c_str(),
              out_path.c_str());
  return 0;
}

int run_mc_rates(const std::string& plan_path, const std::string& out_path,
                 const std::string& csv_path, int threads,
                 std::optional<std::uint64_t> seed_override) {
  auto plan = heatcp::plan_from_toml(heatcp::TomlLite::parse_file(plan_path));
  if (seed_override.has_value()) plan.master_seed = *seed_override;
  auto report = heatcp::run_plan(plan, threads);
  heatcp::write_file(out_path, heatcp::rate_report_to_json(report));
  const std::string csv = !csv_path.empty() ? csv_path : plan.out_csv;
  if (!csv.empty()) {
    heatcp::write_file(csv, heatcp::replicate_rows_csv(report.rows));
  }
  std::printf("mc-rates: plan %s -> %s\n", plan_path.c_str(), out_path.c_str());
  for (const auto& s : report.per_n) {
    std::printf("  n=%d median errors: tm=%s tp=%s tau=%s\n", s.n,
                fmt17(s.median_err_tm).c_str(), fmt17(s.median_err_tp).c_str(),
                fmt17(s.median_err_tau).c_str());
  }
  if (report.slope_tm_median.has_value()) {
    std::printf("  slope tm median = %s +- %s\n",
                fmt17(report.slope_tm_median->slope).c_str(),
                fmt17(report.slope_tm_median->std_error).c_str());
  }
  if (report.slope_tau_median.has_value()) {
    std::printf("  slope tau median = %s +- %s\n",
                fmt17(report.slope_tau_median->slope).c_str(),
                fmt17(report.slope_tau_median->std_error).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic heat equation change-point toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of the weighted Laplacian");
  ProfileFlags sp_pf;
  sp_pf.attach(sp);
  int sp_modes = 10;
  int sp_fem_cells = 0;
  std::string sp_out;
  sp->add_option("--modes", sp_modes, "number of eigenvalues")
      ->check(CLI::PositiveNumber);
  sp->add_option("--fem-cells", sp_fem_cells,
                 "also run the FEM oracle with this many cells");
  sp->add_option("--out", sp_out, "JSON output path");

  // simulate
  auto* si = app.add_subcommand("simulate", "synthesize an observation set");
  ProfileFlags si_pf;
  si_pf.attach(si);
  int si_n = 10;
  double si_T = 1.0;
  std::int64_t si_steps = 0;
  int si_modes = 0;
  std::uint64_t si_seed = 1;
  bool si_brownian = false;
  std::string si_out;
  si->add_option("--n", si_n, "number of measurement sites")
      ->check(CLI::PositiveNumber);
  si->add_option("--T", si_T, "time horizon");
  si->add_option("--steps", si_steps, "time steps (default 4 n^2)");
  si->add_option("--modes", si_modes, "spectral modes (default 20 n)");
  si->add_option("--seed", si_seed, "RNG seed");
  si->add_flag("--brownian", si_brownian,
               "export per-site martingale terms in downstream functionals");
  si->add_option("--out", si_out, "observation CSV path")->required();

  // estimate
  auto* es = app.add_subcommand("estimate", "run the M-estimator on a dump");
  std::string es_in, es_out, es_funcs;
  bool es_no_circ = false, es_known = false;
  double es_tm = 1.0, es_tp = 2.0;
  es->add_option("--in", es_in, "observation CSV path")->required();
  es->add_option("--out", es_out, "estimate JSON path")->required();
  es->add_option("--functionals", es_funcs,
                 "also dump per-site (A_i, B_i) as CSV");
  es->add_flag("--no-circ", es_no_circ, "ablation: drop the nuisance block");
  es->add_flag("--known", es_known, "known-diffusivity CUSUM variant");
  es->add_option("--theta-minus", es_tm, "known theta minus (with --known)");
  es->add_option("--theta-plus", es_tp, "known theta plus (with --known)");

  // toy
  auto* ty = app.add_subcommand("toy", "signal-plus-white-noise model problem");
  heatcp::ToyConfig ty_cfg;
  int ty_reps = 2000;
  std::string ty_out;
  ty->add_option("--theta-minus", ty_cfg.theta_minus, "drift left of tau");
  ty->add_option("--theta-plus", ty_cfg.theta_plus, "drift right of tau");
  ty->add_option("--tau", ty_cfg.tau, "change point");
  ty->add_option("--n", ty_cfg.n, "statistical resolution");
  ty->add_option("--n-x", ty_cfg.n_x, "simulation grid size");
  ty->add_option("--sigma", ty_cfg.sigma, "noise level (default n^-3/2)");
  ty->add_option("--seed", ty_cfg.seed, "RNG seed");
  ty->add_option("--reps", ty_reps, "replicates")->check(CLI::PositiveNumber);
  ty->add_option("--out", ty_out, "rescaled-error CSV path")->required();

  // limit-law
  auto* ll = app.add_subcommand("limit-law",
                                "argmin law of drifted two-sided Brownian motion");
  heatcp::ArgminLawConfig ll_cfg;
  std::string ll_out, ll_summary;
  ll->add_option("--half-width", ll_cfg.half_width, "domain truncation H");
  ll->add_option("--step", ll_cfg.step, "grid step");
  ll->add_option("--reps", ll_cfg.replicates, "replicates");
  ll->add_option("--seed", ll_cfg.seed, "RNG seed");
  ll->add_option("--out", ll_out, "samples CSV path")->required();
  ll->add_option("--summary", ll_summary, "summary quantiles JSON path");

  // mc-rates
  auto* mc = app.add_subcommand("mc-rates", "replicated convergence-rate study");
  std::string mc_plan, mc_out = "report.json", mc_csv;
  int mc_threads = 0;
  std::uint64_t mc_seed = 0;
  bool mc_seed_set = false;
  mc->add_option("--plan", mc_plan, "experiment plan TOML")->required();
  mc->add_option("--out", mc_out, "report JSON path");
  mc->add_option("--csv", mc_csv, "per-replicate CSV path");
  mc->add_option("--threads", mc_threads, "worker threads (default: all)");
  mc->add_option("--seed", mc_seed, "override the plan master seed")
      ->each([&](const std::string&) { mc_seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sp->parsed()) return run_spectrum(sp_pf, sp_modes, sp_fem_cells, sp_out);
    if (si->parsed()) {
      return run_simulate(si_pf, si_n, si_T, si_steps, si_modes, si_seed,
                          si_brownian, si_out);
    }
    if (es->parsed()) {
      return run_estimate(es_in, es_out, es_no_circ, es_known, es_tm, es_tp,
                          es_funcs);
    }
    if (ty->parsed()) return run_toy(ty_cfg, ty_reps, ty_out);
    if (ll->parsed()) return run_limit_law(ll_cfg, ll_out, ll_summary);
    if (mc->parsed()) {
      return run_mc_rates(mc_plan, mc_out, mc_csv, mc_threads,
                          mc_seed_set ? std::optional<std::uint64_t>(mc_seed)
                                      : std::nullopt);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
