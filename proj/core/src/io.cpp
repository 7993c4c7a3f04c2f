#include "heatcp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "heatcp/stats.hpp"
#include "json.hpp"

namespace heatcp {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json profile_json(const DiffusivityProfile& p) {
  return json{{"theta_minus", p.theta_minus()},
              {"theta_plus", p.theta_plus()},
              {"tau", p.tau()},
              {"theta_lo", p.theta_lo()},
              {"theta_hi", p.theta_hi()}};
}

json config_json(const SimulationConfig& c, const DiffusivityProfile& p) {
  return json{{"horizon", c.horizon},
              {"time_steps", c.time_steps},
              {"mode_count", c.mode_count},
              {"seed", c.seed},
              {"n", c.n},
              {"with_brownian", c.with_brownian},
              {"profile", profile_json(p)}};
}

}  // namespace

std::string observation_set_to_csv(const ObservationSet& obs) {
  std::string out;
  out += "# heatcp-observation-set v1\n";
  out += "# config: " + config_json(obs.config, obs.profile).dump() + "\n";
  const int n = obs.config.n;
  out += "t";
  for (int i = 1; i <= n; ++i) out += ",X_" + std::to_string(i);
  for (int i = 1; i <= n; ++i) out += ",XD_" + std::to_string(i);
  for (int i = 1; i <= n; ++i) out += ",dB_" + std::to_string(i);
  out += ",XTH_kb\n";
  for (std::int64_t j = 0; j <= obs.config.time_steps; ++j) {
    out += fmt(obs.times[j]);
    for (int i = 1; i <= n; ++i) out += "," + fmt(obs.x(i, j));
    for (int i = 1; i <= n; ++i) out += "," + fmt(obs.xd(i, j));
    for (int i = 1; i <= n; ++i) out += "," + fmt(j == 0 ? 0.0 : obs.db(i, j));
    out += "," + fmt(obs.xtheta_kb[j]);
    out += "\n";
  }
  return out;
}

ObservationSet observation_set_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# heatcp-observation-set", 0) != 0) {
    throw std::invalid_argument("observation csv: bad magic line");
  }
  if (!std::getline(in, line) || line.rfind("# config: ", 0) != 0) {
    throw std::invalid_argument("observation csv: missing config line");
  }
  const json cfg = json::parse(line.substr(10));
  SimulationConfig config;
  config.horizon = cfg.at("horizon").get<double>();
  config.time_steps = cfg.at("time_steps").get<std::int64_t>();
  config.mode_count = cfg.at("mode_count").get<int>();
  config.seed = cfg.at("seed").get<std::uint64_t>();
  config.n = cfg.at("n").get<int>();
  config.with_brownian = cfg.at("with_brownian").get<bool>();
  const json pj = cfg.at("profile");
  DiffusivityProfile profile(
      pj.at("theta_minus").get<double>(), pj.at("theta_plus").get<double>(),
      pj.at("tau").get<double>(), pj.at("theta_lo").get<double>(),
      pj.at("theta_hi").get<double>());

  ObservationSet obs{config, profile, {}, {}, {}, {}, {}};
  const std::int64_t cols = config.time_steps + 1;
  const int n = config.n;
  obs.times.resize(cols);
  obs.X.assign(static_cast<std::size_t>(n) * cols, 0.0);
  obs.XD.assign(static_cast<std::size_t>(n) * cols, 0.0);
  obs.dB.assign(static_cast<std::size_t>(n) * config.time_steps, 0.0);
  obs.xtheta_kb.assign(cols, 0.0);

  if (!std::getline(in, line)) {
    throw std::invalid_argument("observation csv: missing header row");
  }
  for (std::int64_t j = 0; j < cols; ++j) {
    if (!std::getline(in, line)) {
      throw std::invalid_argument("observation csv: truncated data");
    }
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    obs.times[j] = std::stod(cell);
    for (int i = 1; i <= n; ++i) {
      std::getline(row, cell, ',');
      obs.X[(i - 1) * cols + j] = std::stod(cell);
    }
    for (int i = 1; i <= n; ++i) {
      std::getline(row, cell, ',');
      obs.XD[(i - 1) * cols + j] = std::stod(cell);
    }
    for (int i = 1; i <= n; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw std::invalid_argument("observation csv: missing dB column");
      }
      if (j >= 1) obs.dB[(i - 1) * config.time_steps + (j - 1)] = std::stod(cell);
    }
    if (!std::getline(row, cell, ',')) {
      throw std::invalid_argument("observation csv: missing XTH column");
    }
    obs.xtheta_kb[j] = std::stod(cell);
  }
  return obs;
}

std::string estimate_result_to_json(const EstimateResult& result,
                                    const std::string& config_echo_json) {
  json out{{"theta_minus_hat", result.theta_minus_hat},
           {"theta_plus_hat", result.theta_plus_hat},
           {"theta_circ_hat", result.theta_circ_hat},
           {"k_hat", result.k_hat},
           {"tau_hat", result.tau_hat},
           {"profile", result.profile}};
  if (!config_echo_json.empty()) {
    out["config"] = json::parse(config_echo_json);
  }
  return out.dump(2) + "\n";
}

std::string plan_to_json(const ExperimentPlan& plan) {
  json out{{"n", plan.n_values},
           {"replicates", plan.replicates},
           {"estimator", plan.estimator},
           {"theta_minus", plan.theta_minus},
           {"theta_plus", plan.theta_plus},
           {"eta", plan.eta_schedule},
           {"eta_beta", plan.eta_beta},
           {"theta_star", plan.theta_star},
           {"tau", plan.tau},
           {"horizon", plan.horizon},
           {"theta_lo", plan.theta_lo},
           {"theta_hi", plan.theta_hi},
           {"modes_per_site", plan.modes_per_site},
           {"steps_factor", plan.steps_factor},
           {"no_circ", plan.no_circ},
           {"toy_grid", plan.toy_grid},
           {"master_seed", plan.master_seed},
           {"out_csv", plan.out_csv}};
  return out.dump();
}

namespace {

json fit_json(const std::optional<FitResult>& fit) {
  if (!fit.has_value()) return nullptr;
  return json{{"slope", fit->slope}, {"std_error", fit->std_error}};
}

}  // namespace

std::string rate_report_to_json(const RateReport& report) {
  json per_n = json::array();
  for (const auto& s : report.per_n) {
    per_n.push_back(json{{"n", s.n},
                         {"delta", s.delta},
                         {"median_err_tm", s.median_err_tm},
                         {"median_err_tp", s.median_err_tp},
                         {"median_err_tau", s.median_err_tau},
                         {"iqr_err_tm", s.iqr_err_tm},
                         {"iqr_err_tp", s.iqr_err_tp},
                         {"iqr_err_tau", s.iqr_err_tau},
                         {"mean_err_tm", s.mean_err_tm},
                         {"mean_err_tp", s.mean_err_tp},
                         {"mean_err_tau", s.mean_err_tau},
                         {"failures", s.failures}});
  }
  json out{{"config", json::parse(plan_to_json(report.plan))},
           {"per_n", per_n},
           {"slopes",
            json{{"theta_minus_median", fit_json(report.slope_tm_median)},
                 {"theta_plus_median", fit_json(report.slope_tp_median)},
                 {"tau_median", fit_json(report.slope_tau_median)},
                 {"theta_minus_mean", fit_json(report.slope_tm_mean)},
                 {"theta_plus_mean", fit_json(report.slope_tp_mean)},
                 {"tau_mean", fit_json(report.slope_tau_mean)}}}};
  return out.dump(2) + "\n";
}

std::string sample_summary_json(const std::vector<double>& sample,
                                const std::string& config_echo_json) {
  std::vector<double> abs_sample;
  abs_sample.reserve(sample.size());
  for (double v : sample) abs_sample.push_back(std::abs(v));
  json out{{"count", sample.size()},
           {"mean", mean(sample)},
           {"median", median(sample)},
           {"median_abs", median(abs_sample)},
           {"q05", quantile(sample, 0.05)},
           {"q25", quantile(sample, 0.25)},
           {"q75", quantile(sample, 0.75)},
           {"q95", quantile(sample, 0.95)}};
  if (!config_echo_json.empty()) {
    out["config"] = json::parse(config_echo_json);
  }
  return out.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for read: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace heatcp
