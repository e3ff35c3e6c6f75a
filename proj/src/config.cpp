#include "deloc/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace deloc {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path, std::vector<std::string>& errors) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      errors.push_back("unknown key '" + path + it.key() + "'");
  }
}

bool want_number(const json& obj, const std::string& key,
                 const std::string& path, std::vector<std::string>& errors) {
  if (!obj.contains(key)) {
    errors.push_back("missing key '" + path + key + "'");
    return false;
  }
  if (!obj[key].is_number()) {
    errors.push_back("key '" + path + key + "' must be a number");
    return false;
  }
  return true;
}

// typed lookup with a fallback; a wrong type is a collected error, not a throw
double num_or(const json& obj, const std::string& key, double fallback,
              std::vector<std::string>& errors) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    errors.push_back("key '" + key + "' must be a number");
    return fallback;
  }
  return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& key, int fallback,
           std::vector<std::string>& errors) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    errors.push_back("key '" + key + "' must be an integer");
    return fallback;
  }
  return obj[key].get<int>();
}

bool bool_or(const json& obj, const std::string& key, bool fallback,
             std::vector<std::string>& errors) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    errors.push_back("key '" + key + "' must be a boolean");
    return fallback;
  }
  return obj[key].get<bool>();
}

std::string string_or(const json& obj, const std::string& key,
                      const std::string& fallback,
                      std::vector<std::string>& errors) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    errors.push_back("key '" + key + "' must be a string");
    return fallback;
  }
  return obj[key].get<std::string>();
}

DistributionSpec parse_dist(const json& obj, const std::string& path,
                            std::vector<std::string>& errors) {
  DistributionSpec d;
  if (!obj.is_object()) {
    errors.push_back("'" + path + "' must be an object");
    return d;
  }
  check_keys(obj, {"kind", "a", "b", "mean", "sigma", "p", "c"}, path, errors);
  const std::string kind = string_or(obj, "kind", "", errors);
  if (kind == "uniform") {
    if (want_number(obj, "a", path, errors) && want_number(obj, "b", path, errors))
      d = DistributionSpec::uniform(obj["a"], obj["b"]);
  } else if (kind == "gaussian") {
    if (want_number(obj, "mean", path, errors) &&
        want_number(obj, "sigma", path, errors))
      d = DistributionSpec::gaussian(obj["mean"], obj["sigma"]);
  } else if (kind == "bernoulli_sym") {
    d = DistributionSpec::bernoulli_sym();
  } else if (kind == "bernoulli") {
    if (want_number(obj, "p", path, errors))
      d = DistributionSpec::bernoulli(obj["p"]);
  } else if (kind == "point_mass") {
    if (want_number(obj, "c", path, errors))
      d = DistributionSpec::point_mass(obj["c"]);
  } else {
    errors.push_back("'" + path + "kind' must be one of uniform, gaussian, "
                     "bernoulli_sym, bernoulli, point_mass");
    return d;
  }
  try {
    d.validate();
  } catch (const std::exception& e) {
    errors.push_back(path + ": " + e.what());
  }
  return d;
}

GraphConfig parse_graph(const json& obj, std::vector<std::string>& errors) {
  GraphConfig g;
  if (!obj.is_object()) {
    errors.push_back("'graph' must be an object");
    return g;
  }
  check_keys(obj, {"n", "p", "edge_list"}, "graph.", errors);
  if (obj.contains("edge_list")) {
    g.from_file = true;
    if (!obj["edge_list"].is_string())
      errors.push_back("'graph.edge_list' must be a path string");
    else
      g.edge_list_path = obj["edge_list"];
    return g;
  }
  if (want_number(obj, "n", "graph.", errors)) g.n = obj["n"];
  if (want_number(obj, "p", "graph.", errors)) g.p = obj["p"];
  if (g.n < 2) errors.push_back("'graph.n' must be >= 2");
  if (!(g.p > 0.0 && g.p < 1.0))
    errors.push_back("'graph.p' must lie in (0, 1)");
  return g;
}

std::vector<double> parse_grid(const json& obj, const std::string& key,
                               std::vector<std::string>& errors) {
  std::vector<double> grid;
  if (!obj.contains(key)) {
    errors.push_back("missing key '" + key + "'");
    return grid;
  }
  if (!obj[key].is_array() || obj[key].empty()) {
    errors.push_back("'" + key + "' must be a non-empty array of numbers");
    return grid;
  }
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      errors.push_back("'" + key + "' must contain only numbers");
      return {};
    }
    grid.push_back(v);
  }
  return grid;
}

}  // namespace

ValidationResult validate_config(const std::string& json_text) {
  ValidationResult result;
  std::vector<std::string>& errors = result.errors;

  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    errors.push_back(std::string("config is not valid JSON: ") + e.what());
    return result;
  }
  if (!root.is_object()) {
    errors.push_back("config must be a JSON object");
    return result;
  }

  ExperimentConfig cfg;

  static const std::set<std::string> common = {
      "kind", "master_seed", "threads", "out_dir", "constants"};
  static const std::set<std::string> per_kind_survey = {
      "ensemble", "trials", "eps_grid", "loc_eps", "loc_delta"};
  static const std::set<std::string> per_kind_density = {
      "dists", "weights", "smoothing_sigma", "grid"};
  static const std::set<std::string> per_kind_smallball = {
      "audit",  "t_grid", "samples", "d", "M",     "l",
      "C",      "gx_l",   "gx_m",    "entry", "x", "theta",
      "dist",   "N",      "dim_E",   "r"};
  static const std::set<std::string> per_kind_graph_audit = {"graph", "seeds",
                                                             "C_audit"};
  static const std::set<std::string> per_kind_braess = {
      "graph", "seeds", "mode", "sample_m", "tie_tol", "c1", "c2",
      "include_pairs"};
  static const std::set<std::string> per_kind_nodal = {"graph", "seeds",
                                                       "zero_tol"};

  const std::string kind = string_or(root, "kind", "", errors);
  std::set<std::string> allowed = common;
  if (kind == "deloc_survey") {
    cfg.kind = ExperimentKind::DelocSurvey;
    allowed.insert(per_kind_survey.begin(), per_kind_survey.end());
  } else if (kind == "smallball_audit") {
    cfg.kind = ExperimentKind::SmallballAudit;
    allowed.insert(per_kind_smallball.begin(), per_kind_smallball.end());
  } else if (kind == "density_curve") {
    cfg.kind = ExperimentKind::DensityCurve;
    allowed.insert(per_kind_density.begin(), per_kind_density.end());
  } else if (kind == "graph_audit") {
    cfg.kind = ExperimentKind::GraphAudit;
    allowed.insert(per_kind_graph_audit.begin(), per_kind_graph_audit.end());
  } else if (kind == "braess") {
    cfg.kind = ExperimentKind::Braess;
    allowed.insert(per_kind_braess.begin(), per_kind_braess.end());
  } else if (kind == "nodal") {
    cfg.kind = ExperimentKind::Nodal;
    allowed.insert(per_kind_nodal.begin(), per_kind_nodal.end());
  } else {
    errors.push_back(
        "'kind' must be one of deloc_survey, smallball_audit, density_curve, "
        "graph_audit, braess, nodal");
    return result;
  }
  check_keys(root, allowed, "", errors);

  if (root.contains("master_seed")) {
    if (!root["master_seed"].is_number())
      errors.push_back("'master_seed' must be a number");
    else
      cfg.master_seed = root["master_seed"].get<std::uint64_t>();
  } else {
    cfg.warnings.push_back("master_seed missing; defaulting to 0");
  }
  cfg.threads = int_or(root, "threads", 1, errors);
  if (cfg.threads < 1) errors.push_back("'threads' must be >= 1");
  cfg.out_dir = string_or(root, "out_dir", "out", errors);

  if (root.contains("constants")) {
    const json& c = root["constants"];
    if (!c.is_object()) {
      errors.push_back("'constants' must be an object");
    } else {
      check_keys(c,
                 {"C0", "halasz_C", "C_audit", "c1", "c2", "M", "s",
                  "tensor_M_guard", "braess_exact_guard"},
                 "constants.", errors);
      cfg.constants.C0 = num_or(c, "C0", cfg.constants.C0, errors);
      cfg.constants.halasz_C = num_or(c, "halasz_C", cfg.constants.halasz_C, errors);
      cfg.constants.C_audit = num_or(c, "C_audit", cfg.constants.C_audit, errors);
      cfg.constants.c1 = num_or(c, "c1", cfg.constants.c1, errors);
      cfg.constants.c2 = num_or(c, "c2", cfg.constants.c2, errors);
      cfg.constants.M = num_or(c, "M", cfg.constants.M, errors);
      cfg.constants.s = num_or(c, "s", cfg.constants.s, errors);
      cfg.constants.tensor_M_guard =
          num_or(c, "tensor_M_guard", cfg.constants.tensor_M_guard, errors);
      cfg.constants.braess_exact_guard = int_or(
          c, "braess_exact_guard", cfg.constants.braess_exact_guard, errors);
    }
  }

  switch (cfg.kind) {
    case ExperimentKind::DelocSurvey: {
      if (!root.contains("ensemble") || !root["ensemble"].is_object()) {
        errors.push_back("missing or malformed 'ensemble' object");
        break;
      }
      const json& e = root["ensemble"];
      check_keys(e, {"n", "symmetry", "entry", "shift_mu"}, "ensemble.",
                 errors);
      if (want_number(e, "n", "ensemble.", errors)) cfg.ensemble.n = e["n"];
      const std::string sym = string_or(e, "symmetry", "iid", errors);
      if (sym == "iid") cfg.ensemble.symmetry = Symmetry::IID;
      else if (sym == "symmetric") cfg.ensemble.symmetry = Symmetry::Symmetric;
      else if (sym == "skew_symmetric")
        cfg.ensemble.symmetry = Symmetry::SkewSymmetric;
      else
        errors.push_back(
            "'ensemble.symmetry' must be iid, symmetric or skew_symmetric");
      if (e.contains("entry"))
        cfg.ensemble.entry = parse_dist(e["entry"], "ensemble.entry.", errors);
      else
        errors.push_back("missing key 'ensemble.entry'");
      cfg.ensemble.shift_mu = num_or(e, "shift_mu", 0.0, errors);
      cfg.trials = int_or(root, "trials", 1, errors);
      if (cfg.trials < 1) errors.push_back("'trials' must be >= 1");
      cfg.eps_grid = parse_grid(root, "eps_grid", errors);
      const int n = cfg.ensemble.n;
      if (n > 0) {
        for (double eps : cfg.eps_grid) {
          if (eps < 8.0 / n || eps >= 1.0)
            errors.push_back(
                "'eps_grid' value " + std::to_string(eps) +
                " outside the delocalization guarantee's guard eps in "
                "[8/n, 1) = [" +
                std::to_string(8.0 / n) + ", 1)");
        }
      }
      cfg.loc_eps = num_or(root, "loc_eps",
                           cfg.eps_grid.empty() ? 0.1 : cfg.eps_grid.front(),
                           errors);
      if (n > 0 && (cfg.loc_eps < 8.0 / n || cfg.loc_eps >= 1.0))
        errors.push_back("'loc_eps' outside the guard [8/n, 1)");
      // default mass threshold (eps*s)^6, s from the constants record
      cfg.loc_delta = num_or(root, "loc_delta",
                             std::pow(cfg.loc_eps * cfg.constants.s, 6.0),
                             errors);
      if (root.contains("loc_delta") && !(cfg.loc_delta > 0.0))
        errors.push_back("'loc_delta' must be positive");
      break;
    }
    case ExperimentKind::DensityCurve: {
      if (!root.contains("dists") || !root["dists"].is_array() ||
          root["dists"].empty()) {
        errors.push_back("'dists' must be a non-empty array");
        break;
      }
      int i = 0;
      for (const auto& d : root["dists"]) {
        cfg.dists.push_back(
            parse_dist(d, "dists[" + std::to_string(i) + "].", errors));
        ++i;
      }
      cfg.weights = parse_grid(root, "weights", errors);
      if (cfg.weights.size() != cfg.dists.size())
        errors.push_back("'weights' and 'dists' must have equal lengths");
      cfg.smoothing_sigma = num_or(root, "smoothing_sigma", 0.0, errors);
      if (!root.contains("grid") || !root["grid"].is_object()) {
        errors.push_back("missing or malformed 'grid' object");
        break;
      }
      const json& g = root["grid"];
      check_keys(g, {"min", "max", "points"}, "grid.", errors);
      if (want_number(g, "min", "grid.", errors)) cfg.grid_min = g["min"];
      if (want_number(g, "max", "grid.", errors)) cfg.grid_max = g["max"];
      if (want_number(g, "points", "grid.", errors)) cfg.grid_points = g["points"];
      if (cfg.grid_points < 2) errors.push_back("'grid.points' must be >= 2");
      if (!(cfg.grid_min < cfg.grid_max))
        errors.push_back("'grid.min' must be below 'grid.max'");
      break;
    }
    case ExperimentKind::SmallballAudit: {
      const std::string audit = string_or(root, "audit", "", errors);
      if (audit == "tensorization_z1z2") {
        cfg.audit = SmallballAuditKind::TensorizationZ1Z2;
        cfg.t_grid = parse_grid(root, "t_grid", errors);
        cfg.samples = int_or(root, "samples", 1000000, errors);
        cfg.tensor_d = int_or(root, "d", 5, errors);
        cfg.tensor_M = num_or(root, "M", 4.0, errors);
      } else if (audit == "tensorization_product") {
        cfg.audit = SmallballAuditKind::TensorizationProduct;
        cfg.t_grid = parse_grid(root, "t_grid", errors);
        cfg.samples = int_or(root, "samples", 1000000, errors);
        cfg.tensor_l = int_or(root, "l", 8, errors);
        cfg.tensor_C = num_or(root, "C", 1.0, errors);
      } else if (audit == "gx") {
        cfg.audit = SmallballAuditKind::Gx;
        cfg.gx_l = int_or(root, "gx_l", 4, errors);
        cfg.gx_m = int_or(root, "gx_m", cfg.gx_l, errors);
        if (root.contains("entry"))
          cfg.gx_entry = parse_dist(root["entry"], "entry.", errors);
        else
          errors.push_back("missing key 'entry'");
        cfg.gx_x = string_or(root, "x", "e1", errors);
        if (cfg.gx_x != "e1" && cfg.gx_x != "flat")
          errors.push_back("'x' must be 'e1' or 'flat'");
        cfg.gx_theta = num_or(root, "theta", 0.5, errors);
        cfg.samples = int_or(root, "samples", 10000, errors);
      } else if (audit == "superlevel") {
        cfg.audit = SmallballAuditKind::Superlevel;
        if (root.contains("dist"))
          cfg.sb_dist = parse_dist(root["dist"], "dist.", errors);
        else
          errors.push_back("missing key 'dist'");
        cfg.t_grid = parse_grid(root, "t_grid", errors);
      } else if (audit == "randomize") {
        cfg.audit = SmallballAuditKind::Randomize;
        if (root.contains("dist"))
          cfg.sb_dist = parse_dist(root["dist"], "dist.", errors);
        else
          errors.push_back("missing key 'dist'");
        cfg.rand_N = int_or(root, "N", 6, errors);
        cfg.rand_dim = int_or(root, "dim_E", 2, errors);
        cfg.rand_r = num_or(root, "r", 0.3, errors);
        cfg.samples = int_or(root, "samples", 100000, errors);
      } else {
        errors.push_back(
            "'audit' must be one of tensorization_z1z2, "
            "tensorization_product, gx, superlevel, randomize");
      }
      if (cfg.samples < 1) errors.push_back("'samples' must be >= 1");
      break;
    }
    case ExperimentKind::GraphAudit:
    case ExperimentKind::Braess:
    case ExperimentKind::Nodal: {
      if (!root.contains("graph")) {
        errors.push_back("missing key 'graph'");
      } else {
        cfg.graph = parse_graph(root["graph"], errors);
      }
      cfg.graph_seeds = int_or(root, "seeds", 1, errors);
      if (cfg.graph_seeds < 1) errors.push_back("'seeds' must be >= 1");
      if (cfg.kind == ExperimentKind::GraphAudit)
        cfg.C_audit = num_or(root, "C_audit", cfg.constants.C_audit, errors);
      if (cfg.kind == ExperimentKind::Braess) {
        const std::string mode = string_or(root, "mode", "exact", errors);
        if (mode == "exact") {
          cfg.braess_exact = true;
        } else if (mode == "sampled") {
          cfg.braess_exact = false;
          cfg.braess_sample_m = int_or(root, "sample_m", 0, errors);
          if (cfg.braess_sample_m < 1)
            errors.push_back("'sample_m' must be >= 1 in sampled mode");
        } else {
          errors.push_back("'mode' must be 'exact' or 'sampled'");
        }
        cfg.tie_tol = num_or(root, "tie_tol", 1e-10, errors);
        cfg.include_pairs = bool_or(root, "include_pairs", false, errors);
        cfg.constants.c1 = num_or(root, "c1", cfg.constants.c1, errors);
        cfg.constants.c2 = num_or(root, "c2", cfg.constants.c2, errors);
      }
      if (cfg.kind == ExperimentKind::Nodal)
        cfg.zero_tol = num_or(root, "zero_tol", 1e-12, errors);
      break;
    }
  }

  cfg.config_echo = root.dump();
  if (errors.empty()) result.config = std::move(cfg);
  return result;
}

}  // namespace deloc
