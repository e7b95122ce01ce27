#pragma once

// JSON experiment config and the regret CSV writer used by the CLI.

#include <iosfwd>
#include <string>

#include "cnsb/harness.hpp"

namespace cnsb {

// Parses and validates a config document. Unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Header `policy,step,mean_cum_regret,stderr` preceded by `#` comment
// lines that materialize the effective configuration. Numbers carry 17
// significant digits.
void write_regret_csv(std::ostream& out, const ExperimentConfig& config,
                      const std::vector<AggregateResult>& results);
void write_regret_csv_file(const std::string& path,
                           const ExperimentConfig& config,
                           const std::vector<AggregateResult>& results);

std::string format_double(double value);  // %.17g

// The documented synthetic default: L descending values 0.90, 0.85, ...
AttractionVector descending_base(int num_items);

}  // namespace cnsb
