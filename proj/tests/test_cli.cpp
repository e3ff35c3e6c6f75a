#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "deloc/config.hpp"
#include "deloc/experiments.hpp"
#include "deloc/graphs.hpp"

using namespace deloc;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("deloc_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("unknown keys are rejected by name") {
  const auto r = validate_config(R"({
    "kind": "density_curve",
    "dists": [{"kind": "uniform", "a": -0.5, "b": 0.5}],
    "weights": [1.0],
    "smoothing_sigma": 0.001,
    "grid": {"min": -1, "max": 1, "points": 11},
    "master_seed": 1,
    "bogus_key": 7
  })");
  CHECK(!r.config.has_value());
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].find("bogus_key") != std::string::npos);
}

TEST_CASE("eps below the delocalization guard is rejected with the guard") {
  const auto r = validate_config(R"({
    "kind": "deloc_survey",
    "master_seed": 3,
    "ensemble": {"n": 100, "symmetry": "symmetric",
                 "entry": {"kind": "gaussian", "mean": 0, "sigma": 1}},
    "trials": 2,
    "eps_grid": [0.001]
  })");
  CHECK(!r.config.has_value());
  REQUIRE(!r.errors.empty());
  CHECK(r.errors[0].find("8/n") != std::string::npos);
}

TEST_CASE("all validation errors are collected, not just the first") {
  const auto r = validate_config(R"({
    "kind": "deloc_survey",
    "master_seed": 3,
    "ensemble": {"n": 100, "symmetry": "sideways",
                 "entry": {"kind": "uniform", "a": 2, "b": 1}},
    "trials": 0,
    "eps_grid": [0.5],
    "mystery": true
  })");
  CHECK(!r.config.has_value());
  CHECK(r.errors.size() >= 3);  // symmetry, entry bounds, trials, mystery
}

TEST_CASE("missing master seed defaults to zero with a warning") {
  const auto r = validate_config(R"({
    "kind": "smallball_audit",
    "audit": "superlevel",
    "dist": {"kind": "uniform", "a": -0.5, "b": 0.5},
    "t_grid": [0.5]
  })");
  REQUIRE(r.config.has_value());
  CHECK(r.config->master_seed == 0);
  REQUIRE(r.config->warnings.size() == 1);
  CHECK(r.config->warnings[0].find("master_seed") != std::string::npos);
}

TEST_CASE("wrong value types are collected errors, not crashes") {
  const auto r = validate_config(R"({
    "kind": "deloc_survey",
    "master_seed": 1,
    "ensemble": {"n": 100, "symmetry": "symmetric",
                 "entry": {"kind": "gaussian", "mean": 0, "sigma": 1}},
    "trials": "many",
    "eps_grid": [0.5],
    "loc_delta": true
  })");
  CHECK(!r.config.has_value());
  CHECK(r.errors.size() >= 2);
  bool mentions_trials = false;
  for (const auto& e : r.errors)
    if (e.find("trials") != std::string::npos) mentions_trials = true;
  CHECK(mentions_trials);
}

TEST_CASE("malformed JSON yields a single parse error") {
  const auto r = validate_config("{nope");
  CHECK(!r.config.has_value());
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].find("JSON") != std::string::npos);
}

TEST_CASE("density curve run reproduces the two-uniform value at zero") {
  const auto dir = temp_dir("density");
  auto r = validate_config(R"({
    "kind": "density_curve",
    "master_seed": 0,
    "dists": [{"kind": "uniform", "a": -0.5, "b": 0.5},
              {"kind": "uniform", "a": -0.5, "b": 0.5}],
    "weights": [0.7071067811865476, 0.7071067811865476],
    "grid": {"min": -1.0, "max": 1.0, "points": 201}
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  run_experiment(*r.config);

  const std::string csv = slurp(dir / "density_curve.csv");
  // locate the grid point 0 and check the value
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "grid,value");
  double at_zero = -1.0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    if (line.substr(0, comma) == "0" || line.substr(0, comma) == "-0") {
      at_zero = std::stod(line.substr(comma + 1));
    }
  }
  CHECK(at_zero == doctest::Approx(1.41421).epsilon(1e-3));
  CHECK(slurp(dir / "manifest.json").find("density_curve") != std::string::npos);
}

TEST_CASE("braess run on K3 reports NoNonEdges per row and still succeeds") {
  const auto dir = temp_dir("k3");
  const auto graph_path = dir / "k3.txt";
  {
    std::ofstream out(graph_path);
    out << "3 3\n0 1\n0 2\n1 2\n";
  }
  auto r = validate_config(std::string(R"({
    "kind": "braess",
    "master_seed": 0,
    "graph": {"edge_list": ")") + graph_path.string() + R"("}
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  run_experiment(*r.config);
  const std::string csv = slurp(dir / "braess.csv");
  CHECK(csv.find("NoNonEdges") != std::string::npos);
}

TEST_CASE("survey runs are byte-identical across repeats and thread counts") {
  auto base = validate_config(R"({
    "kind": "deloc_survey",
    "master_seed": 11,
    "ensemble": {"n": 10, "symmetry": "symmetric",
                 "entry": {"kind": "uniform", "a": -1, "b": 1}},
    "trials": 2,
    "eps_grid": [0.8],
    "loc_eps": 0.8,
    "loc_delta": 0.0001
  })");
  REQUIRE(base.config.has_value());

  std::vector<std::string> outputs;
  for (int run = 0; run < 3; ++run) {
    const auto dir = temp_dir("survey" + std::to_string(run));
    ExperimentConfig cfg = *base.config;
    cfg.out_dir = dir.string();
    cfg.threads = run + 1;  // 1, 2, 3 workers
    run_experiment(cfg);
    outputs.push_back(slurp(dir / "deloc_survey.csv") +
                      slurp(dir / "deloc_survey_summary.csv"));
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(outputs[0] == outputs[2]);
}

TEST_CASE("nodal run emits one row per non-first eigenvector") {
  const auto dir = temp_dir("nodal");
  auto r = validate_config(R"({
    "kind": "nodal",
    "master_seed": 4,
    "graph": {"n": 24, "p": 0.5},
    "seeds": 2
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  const RunResult result = run_experiment(*r.config);
  CHECK(result.row_counts.at("nodal.csv") == 2 * 23);
}

TEST_CASE("graph audit run emits five property rows per seed") {
  const auto dir = temp_dir("audit");
  auto r = validate_config(R"({
    "kind": "graph_audit",
    "master_seed": 5,
    "graph": {"n": 60, "p": 0.5},
    "seeds": 3,
    "C_audit": 3.0
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  const RunResult result = run_experiment(*r.config);
  CHECK(result.row_counts.at("graph_audit.csv") == 15);
}

TEST_CASE("braess run with include_pairs emits one row per tested non-edge") {
  const auto dir = temp_dir("c4pairs");
  const auto graph_path = dir / "c4.txt";
  {
    std::ofstream out(graph_path);
    out << "4 4\n0 1\n1 2\n2 3\n0 3\n";
  }
  auto r = validate_config(std::string(R"({
    "kind": "braess",
    "master_seed": 0,
    "include_pairs": true,
    "graph": {"edge_list": ")") + graph_path.string() + R"("}
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  const RunResult result = run_experiment(*r.config);
  CHECK(result.row_counts.at("braess.csv") == 1);
  CHECK(result.row_counts.at("braess_pairs.csv") == 2);  // the two diagonals
}

TEST_CASE("smallball gx run writes its single-row report") {
  const auto dir = temp_dir("gx");
  auto r = validate_config(R"({
    "kind": "smallball_audit",
    "master_seed": 6,
    "audit": "gx",
    "gx_l": 4, "gx_m": 4,
    "entry": {"kind": "gaussian", "mean": 0, "sigma": 1},
    "x": "e1",
    "theta": 0.5,
    "samples": 2000
  })");
  REQUIRE(r.config.has_value());
  r.config->out_dir = dir.string();
  const RunResult result = run_experiment(*r.config);
  CHECK(result.row_counts.at("gx.csv") == 1);
  const std::string csv = slurp(dir / "gx.csv");
  CHECK(csv.find("theta,empirical,bound") != std::string::npos);
}
