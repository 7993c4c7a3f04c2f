#ifndef HEATCP_IO_HPP
#define HEATCP_IO_HPP

#include <string>

#include "heatcp/estimators.hpp"
#include "heatcp/harness.hpp"
#include "heatcp/simulate.hpp"

namespace heatcp {

// Serialized forms carry the resolved configuration so every artifact is
// reproducible from its own header.  All numbers print with 17 significant
// digits; identical inputs give byte-identical output.

std::string observation_set_to_csv(const ObservationSet& obs);
ObservationSet observation_set_from_csv(const std::string& text);

std::string estimate_result_to_json(const EstimateResult& result,
                                    const std::string& config_echo_json);

std::string rate_report_to_json(const RateReport& report);

std::string plan_to_json(const ExperimentPlan& plan);

// Summary quantiles of a sample as JSON (used by the limit-law command).
std::string sample_summary_json(const std::vector<double>& sample,
                                const std::string& config_echo_json);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace heatcp

#endif
