#pragma once

#include <map>
#include <string>

#include "deloc/config.hpp"

namespace deloc {

struct RunResult {
  std::map<std::string, long long> row_counts;  // per output file
  double duration_seconds = 0.0;
};

//! Dispatches one experiment: runs the configured survey/audit, writes one
//! CSV per report type plus manifest.json into config.out_dir. Data bytes are
//! a pure function of the config (thread count and wall clock excluded).
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace deloc
