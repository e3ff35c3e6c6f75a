#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deloc/constants.hpp"
#include "deloc/distributions.hpp"
#include "deloc/ensembles.hpp"

namespace deloc {

enum class ExperimentKind {
  DelocSurvey,
  SmallballAudit,
  DensityCurve,
  GraphAudit,
  Braess,
  Nodal,
};

enum class SmallballAuditKind {
  TensorizationZ1Z2,
  TensorizationProduct,
  Gx,
  Superlevel,
  Randomize,
};

struct GraphConfig {
  bool from_file = false;
  std::string edge_list_path;
  int n = 0;
  double p = 0.0;
};

//! Parsed and validated experiment description. One experiment kind per
//! invocation; unknown keys are rejected during validation.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::DelocSurvey;
  std::uint64_t master_seed = 0;
  int threads = 1;
  std::string out_dir = "out";
  Constants constants;

  // deloc_survey
  EnsembleSpec ensemble;
  int trials = 1;
  std::vector<double> eps_grid;
  double loc_eps = 0.1;
  double loc_delta = 1e-4;

  // density_curve
  std::vector<DistributionSpec> dists;
  std::vector<double> weights;
  double smoothing_sigma = 0.0;
  double grid_min = 0.0, grid_max = 0.0;
  int grid_points = 0;

  // smallball_audit
  SmallballAuditKind audit = SmallballAuditKind::TensorizationZ1Z2;
  std::vector<double> t_grid;
  int samples = 10000;
  int tensor_d = 5;
  double tensor_M = 4.0;
  int tensor_l = 8;
  double tensor_C = 1.0;
  int gx_l = 4, gx_m = 4;
  DistributionSpec gx_entry;
  std::string gx_x = "e1";  // "e1" or "flat"
  double gx_theta = 0.5;
  DistributionSpec sb_dist;
  int rand_N = 6, rand_dim = 2;
  double rand_r = 0.3;

  // graph experiments
  GraphConfig graph;
  int graph_seeds = 1;
  double C_audit = 3.0;
  bool braess_exact = true;
  int braess_sample_m = 0;
  double tie_tol = 1e-10;
  bool include_pairs = false;
  double zero_tol = 1e-12;

  std::vector<std::string> warnings;  // echoed into the manifest
  std::string config_echo;            // the parsed config, re-serialized
};

struct ValidationResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;
};

//! Full validation of a JSON config text: every problem is collected, not
//! just the first. On success `config` is set and `errors` empty.
ValidationResult validate_config(const std::string& json_text);

}  // namespace deloc
