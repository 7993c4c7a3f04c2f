#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "heatcp/errors.hpp"
#include "heatcp/harness.hpp"
#include "heatcp/io.hpp"

using namespace heatcp;

TEST_CASE("log-log slope fit on exact power laws") {
  std::vector<std::pair<double, double>> lin, three_half;
  for (double d : {0.05, 0.025, 0.0125, 0.00625}) {
    lin.emplace_back(d, 3.0 * d);
    three_half.emplace_back(d, 0.7 * std::pow(d, 1.5));
  }
  auto f1 = fit_loglog_slope(lin);
  CHECK(f1.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f1.std_error == doctest::Approx(0.0).epsilon(1e-10));
  auto f2 = fit_loglog_slope(three_half);
  CHECK(f2.slope == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("slope fit rejects non-positive summaries and short inputs") {
  std::vector<std::pair<double, double>> two{{0.1, 0.1}, {0.05, 0.05}};
  CHECK_THROWS_AS(fit_loglog_slope(two), std::invalid_argument);
  std::vector<std::pair<double, double>> zero{{0.1, 0.1}, {0.05, 0.0},
                                              {0.025, 0.01}};
  CHECK_THROWS_AS(fit_loglog_slope(zero), NonPositiveError);
}

TEST_CASE("plan validation") {
  ExperimentPlan plan;
  plan.n_values = {20, 20};
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.n_values = {10, 20};
  plan.replicates = 10;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.replicates = 50;
  plan.estimator = "bogus";
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan.estimator = "toy";
  CHECK_NOTHROW(plan.validate());
}

TEST_CASE("eta schedules") {
  ExperimentPlan plan;
  plan.theta_minus = 1.0;
  plan.theta_plus = 2.0;
  auto [a, b] = plan.theta_at(50);
  CHECK(a == 1.0);
  CHECK(b == 2.0);
  plan.eta_schedule = "power";
  plan.eta_beta = 1.25;
  plan.theta_star = 1.0;
  auto [c, d] = plan.theta_at(100);
  const double eta = std::pow(0.01, 1.25);
  CHECK(d - c == doctest::Approx(eta).epsilon(1e-12));
  CHECK(0.5 * (c + d) == doctest::Approx(1.0));
}

TEST_CASE("plan round trip through the TOML subset") {
  const char* text = R"(n = [6, 8, 10]
replicates = 50
estimator = "toy"
tau = 0.4
theta_minus = 1.0
theta_plus = 1.5
toy_grid = 2000
master_seed = 5
)";
  auto plan = plan_from_toml(TomlLite::parse(text));
  CHECK(plan.n_values == std::vector<int>{6, 8, 10});
  CHECK(plan.estimator == "toy");
  CHECK(plan.toy_grid == 2000);
}

TEST_CASE("toy plan end to end with identical report bytes") {
  ExperimentPlan plan;
  plan.n_values = {6, 8, 10};
  plan.replicates = 50;
  plan.estimator = "toy";
  plan.theta_minus = 1.0;
  plan.theta_plus = 1.6;
  plan.tau = 0.4;
  plan.toy_grid = 4000;
  plan.master_seed = 99;
  auto r1 = run_plan(plan, 2);
  auto r2 = run_plan(plan, 1);  // thread count must not matter
  CHECK(rate_report_to_json(r1) == rate_report_to_json(r2));
  CHECK(replicate_rows_csv(r1.rows) == replicate_rows_csv(r2.rows));
  CHECK(r1.per_n.size() == 3);
  CHECK(r1.slope_tau_median.has_value());
  CHECK(!r1.slope_tm_median.has_value());  // known-theta variant
  for (const auto& row : r1.rows) CHECK(!row.failed);
}

TEST_CASE("spde plan smoke test at tiny sizes") {
  ExperimentPlan plan;
  plan.n_values = {4, 6, 8};
  plan.replicates = 50;
  plan.estimator = "simultaneous";
  plan.theta_minus = 1.0;
  plan.theta_plus = 2.0;
  plan.tau = 0.45;
  plan.modes_per_site = 10;
  plan.master_seed = 123;
  auto rep = run_plan(plan, 2);
  CHECK(rep.slope_tm_median.has_value());
  for (const auto& s : rep.per_n) {
    CHECK(s.failures == 0);
    CHECK(s.median_err_tm >= 0.0);
  }
  // distinct replicate seeds
  CHECK(rep.rows[0].seed != rep.rows[1].seed);
  CHECK(rep.rows[0].seed != rep.rows[plan.replicates].seed);
}
