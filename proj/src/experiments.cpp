#include "deloc/experiments.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "deloc/csv.hpp"
#include "deloc/errors.hpp"
#include "deloc/graphs.hpp"
#include "deloc/metrics.hpp"
#include "deloc/small_ball.hpp"
#include "deloc/thread_pool.hpp"

namespace deloc {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

GraphSample make_graph(const ExperimentConfig& cfg, int seed_index) {
  if (cfg.graph.from_file) return load_edge_list_file(cfg.graph.edge_list_path);
  return sample_gnp(cfg.graph.n, cfg.graph.p,
                    Seed{cfg.master_seed, static_cast<std::uint64_t>(seed_index)});
}

void run_deloc_survey(const ExperimentConfig& cfg,
                      std::map<std::string, Csv>& files) {
  SurveyOptions options;
  options.loc_eps = cfg.loc_eps;
  options.loc_delta = cfg.loc_delta;
  options.threads = cfg.threads;
  const SurveyResult result = deloc_survey(cfg.ensemble, cfg.trials,
                                           cfg.eps_grid, cfg.master_seed,
                                           options);

  std::vector<std::string> columns = {"trial", "eig_index", "eigenvalue_re",
                                      "eigenvalue_im", "linf"};
  for (double eps : cfg.eps_grid)
    columns.push_back("min_mass_" + format_number(eps));
  Csv rows(columns);
  for (const SurveyRow& r : result.rows) {
    auto row = rows.row();
    row.add(r.trial)
        .add(r.eig_index)
        .add(r.eigenvalue.real())
        .add(r.eigenvalue.imag())
        .add(r.linf);
    for (double m : r.min_mass) row.add(m);
  }
  files.emplace("deloc_survey.csv", std::move(rows));

  Csv summary({"eps", "min_min_mass", "max_linf", "loc_events", "trials",
               "loc_eps", "loc_delta"});
  for (std::size_t g = 0; g < cfg.eps_grid.size(); ++g) {
    summary.row()
        .add(cfg.eps_grid[g])
        .add(result.summary.min_min_mass[g])
        .add(result.summary.max_linf)
        .add(result.summary.loc_events)
        .add(result.summary.trials)
        .add(result.summary.loc_eps)
        .add(result.summary.loc_delta);
  }
  files.emplace("deloc_survey_summary.csv", std::move(summary));
}

void run_density_curve(const ExperimentConfig& cfg,
                       std::map<std::string, Csv>& files) {
  WeightedSumSpec spec;
  spec.dists = cfg.dists;
  spec.weights = cfg.weights;
  spec.smoothing_sigma = cfg.smoothing_sigma;
  std::vector<double> grid;
  grid.reserve(cfg.grid_points);
  for (int i = 0; i < cfg.grid_points; ++i)
    grid.push_back(cfg.grid_min + (cfg.grid_max - cfg.grid_min) * i /
                                      (cfg.grid_points - 1));
  const DensityCurve curve = weighted_sum_density(spec, grid);
  Csv rows({"grid", "value"});
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    rows.row().add(curve.grid[i]).add(curve.values[i]);
  files.emplace("density_curve.csv", std::move(rows));
}

void run_smallball(const ExperimentConfig& cfg,
                   std::map<std::string, Csv>& files) {
  switch (cfg.audit) {
    case SmallballAuditKind::TensorizationZ1Z2:
    case SmallballAuditKind::TensorizationProduct: {
      TensorizationParams params;
      params.d = cfg.tensor_d;
      params.M = cfg.tensor_M;
      params.l = cfg.tensor_l;
      params.C = cfg.tensor_C;
      const auto kind = cfg.audit == SmallballAuditKind::TensorizationZ1Z2
                            ? TensorizationKind::Z1Z2
                            : TensorizationKind::Product;
      const auto rows_data =
          tensorization_audit(kind, params, cfg.t_grid, cfg.samples,
                              cfg.master_seed, cfg.constants.tensor_M_guard);
      Csv rows({"t", "empirical", "bound", "margin", "holds"});
      for (const TensorizationRow& r : rows_data)
        rows.row().add(r.t).add(r.empirical).add(r.bound).add(r.margin).add(
            r.holds);
      files.emplace("tensorization.csv", std::move(rows));
      break;
    }
    case SmallballAuditKind::Gx: {
      Eigen::VectorXcd x(cfg.gx_m);
      if (cfg.gx_x == "e1") {
        x.setZero();
        x(0) = 1.0;
      } else {
        x.setConstant(1.0 / std::sqrt(static_cast<double>(cfg.gx_m)));
      }
      const SmallBallGxReport r =
          small_ball_gx(cfg.gx_l, cfg.gx_m, cfg.gx_entry, x, cfg.gx_theta,
                        cfg.samples, cfg.master_seed, cfg.constants.C0);
      Csv rows({"theta", "empirical", "bound", "holds", "row_empirical",
                "row_bound", "row_holds", "c0_min"});
      rows.row()
          .add(r.theta)
          .add(r.empirical)
          .add(r.bound)
          .add(r.holds)
          .add(r.row_empirical)
          .add(r.row_bound)
          .add(r.row_holds)
          .add(r.c0_min);
      files.emplace("gx.csv", std::move(rows));
      break;
    }
    case SmallballAuditKind::Superlevel: {
      Csv rows({"t", "measure", "bound_low", "bound_high", "holds_low",
                "holds_high", "low_regime"});
      for (double t : cfg.t_grid) {
        const SuperlevelReport r =
            superlevel_measure(cfg.sb_dist, t, cfg.constants.halasz_C);
        rows.row()
            .add(r.t)
            .add(r.measure)
            .add(r.bound_low)
            .add(r.bound_high)
            .add(r.holds_low)
            .add(r.holds_high)
            .add(r.low_regime);
      }
      files.emplace("superlevel.csv", std::move(rows));
      break;
    }
    case SmallballAuditKind::Randomize: {
      // Basis of the first dim_E coordinate directions; the audit's content
      // is the stacked-copies comparison, not the basis choice.
      SubspaceBasis E;
      E.Q = Eigen::MatrixXcd::Zero(cfg.rand_N, cfg.rand_dim);
      for (int j = 0; j < cfg.rand_dim; ++j) E.Q(j, j) = 1.0;
      const RandomizeAudit r = randomize_coordinates_audit(
          cfg.rand_N, cfg.sb_dist, E, cfg.rand_r, cfg.samples, cfg.master_seed);
      Csv rows({"r", "lhs", "rhs", "margin", "holds"});
      rows.row().add(cfg.rand_r).add(r.lhs).add(r.rhs).add(r.margin).add(
          r.holds);
      files.emplace("randomize.csv", std::move(rows));
      break;
    }
  }
}

void run_graph_audit(const ExperimentConfig& cfg,
                     std::map<std::string, Csv>& files) {
  const int seeds = cfg.graph.from_file ? 1 : cfg.graph_seeds;
  struct SeedOut {
    std::string status = "ok";
    std::vector<PropertyReport> reports;
  };
  std::vector<SeedOut> out(seeds);
  parallel_for(seeds, cfg.threads, [&](int s) {
    try {
      const GraphSample G = make_graph(cfg, s);
      out[s].reports = gnp_property_audit(G, cfg.C_audit, cfg.master_seed);
    } catch (const DegeneracyError&) {
      out[s].status = "degenerate";
    }
  });
  Csv rows({"seed", "status", "property", "observed", "observed2", "bound",
            "bound2", "holds", "heuristic"});
  for (int s = 0; s < seeds; ++s) {
    if (out[s].reports.empty()) {
      rows.row()
          .add(s)
          .add(out[s].status)
          .add(std::string("-"))
          .add(0.0)
          .add(0.0)
          .add(0.0)
          .add(0.0)
          .add(false)
          .add(false);
      continue;
    }
    for (const PropertyReport& r : out[s].reports) {
      rows.row()
          .add(s)
          .add(out[s].status)
          .add(r.name)
          .add(r.observed)
          .add(r.observed2)
          .add(r.bound)
          .add(r.bound2)
          .add(r.holds)
          .add(r.heuristic);
    }
  }
  files.emplace("graph_audit.csv", std::move(rows));
}

void run_braess(const ExperimentConfig& cfg, std::map<std::string, Csv>& files) {
  const int seeds = cfg.graph.from_file ? 1 : cfg.graph_seeds;
  Csv rows({"seed", "status", "n", "lambda2_base", "n_tested", "n_decreased",
            "a_minus", "exact_mode"});
  Csv pairs({"seed", "u", "w", "lambda2_new", "decreased", "tie",
             "sufficient_condition"});
  for (int s = 0; s < seeds; ++s) {
    GraphSample G;
    try {
      G = make_graph(cfg, s);
    } catch (const DegeneracyError&) {
      rows.row().add(s).add(std::string("degenerate")).add(0).add(0.0).add(0).add(0).add(0.0).add(cfg.braess_exact);
      continue;
    }
    AMinusOptions options;
    options.exact = cfg.braess_exact;
    options.sample_m = cfg.braess_sample_m;
    options.sample_seed = cfg.master_seed + static_cast<std::uint64_t>(s);
    options.tie_tol = cfg.tie_tol;
    options.c1 = cfg.constants.c1;
    options.c2 = cfg.constants.c2;
    options.threads = cfg.threads;
    options.exact_guard_n = cfg.constants.braess_exact_guard;
    try {
      const BraessReport report = a_minus(G, options);
      rows.row()
          .add(s)
          .add(std::string("ok"))
          .add(G.n)
          .add(report.lambda2_base)
          .add(static_cast<long long>(report.tested.size()))
          .add(report.n_decreased)
          .add(report.a_minus)
          .add(report.exact_mode);
      if (cfg.include_pairs) {
        for (const BraessPair& p : report.tested)
          pairs.row()
              .add(s)
              .add(p.u)
              .add(p.w)
              .add(p.lambda2_new)
              .add(p.decreased)
              .add(p.tie)
              .add(p.sufficient_condition);
      }
    } catch (const NoNonEdgesError&) {
      rows.row()
          .add(s)
          .add(std::string("NoNonEdges"))
          .add(G.n)
          .add(0.0)
          .add(0)
          .add(0)
          .add(0.0)
          .add(cfg.braess_exact);
    } catch (const DegeneracyError&) {
      rows.row().add(s).add(std::string("degenerate")).add(G.n).add(0.0).add(0).add(0).add(0.0).add(cfg.braess_exact);
    }
  }
  files.emplace("braess.csv", std::move(rows));
  if (cfg.include_pairs) files.emplace("braess_pairs.csv", std::move(pairs));
}

void run_nodal(const ExperimentConfig& cfg, std::map<std::string, Csv>& files) {
  const int seeds = cfg.graph.from_file ? 1 : cfg.graph_seeds;
  struct Row {
    int seed, eig_index, n_pos, n_neg, zero_count, cross_pn, cross_np;
    double eigenvalue;
    std::string status;
  };
  std::vector<std::vector<Row>> out(seeds);
  parallel_for(seeds, cfg.threads, [&](int s) {
    GraphSample G;
    try {
      G = make_graph(cfg, s);
      graph_matrices(G);  // degeneracy check up front
    } catch (const DegeneracyError&) {
      out[s].push_back(Row{s, -1, 0, 0, 0, 0, 0, 0.0, "degenerate"});
      return;
    }
    const GraphMatrices M = graph_matrices(G);
    const SpectralData S = eigenpairs(M.adjacency, true);
    for (int k = 1; k < S.n(); ++k) {  // all non-first eigenvectors
      const Eigen::VectorXd v = S.eigenvectors.col(k).real();
      const NodalDecomposition nd = nodal_domains(G, v, cfg.zero_tol);
      const CrossDomainReport cross = cross_domain_degrees(G, v, cfg.zero_tol);
      out[s].push_back(Row{s,
                           k,
                           static_cast<int>(nd.positive_domains.size()),
                           static_cast<int>(nd.negative_domains.size()),
                           static_cast<int>(nd.zero_set.size()),
                           cross.ok ? cross.min_pos_to_neg : -1,
                           cross.ok ? cross.min_neg_to_pos : -1,
                           S.eigenvalues(k).real(),
                           "ok"});
    }
  });
  Csv rows({"seed", "status", "eig_index", "eigenvalue", "n_pos_domains",
            "n_neg_domains", "n_domains", "zero_count", "min_cross_pos_to_neg",
            "min_cross_neg_to_pos"});
  for (const auto& seed_rows : out) {
    for (const Row& r : seed_rows) {
      rows.row()
          .add(r.seed)
          .add(r.status)
          .add(r.eig_index)
          .add(r.eigenvalue)
          .add(r.n_pos)
          .add(r.n_neg)
          .add(r.n_pos + r.n_neg)
          .add(r.zero_count)
          .add(r.cross_pn)
          .add(r.cross_np);
    }
  }
  files.emplace("nodal.csv", std::move(rows));
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::map<std::string, Csv> files;

  switch (cfg.kind) {
    case ExperimentKind::DelocSurvey: run_deloc_survey(cfg, files); break;
    case ExperimentKind::DensityCurve: run_density_curve(cfg, files); break;
    case ExperimentKind::SmallballAudit: run_smallball(cfg, files); break;
    case ExperimentKind::GraphAudit: run_graph_audit(cfg, files); break;
    case ExperimentKind::Braess: run_braess(cfg, files); break;
    case ExperimentKind::Nodal: run_nodal(cfg, files); break;
  }

  std::filesystem::create_directories(cfg.out_dir);
  RunResult result;
  for (const auto& [name, csv] : files) {
    write_file(std::filesystem::path(cfg.out_dir) / name, csv.str());
    result.row_counts[name] = csv.row_count();
  }
  result.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  json manifest;
  manifest["artifact_version"] = "0.1.0";
  manifest["master_seed"] = cfg.master_seed;
  manifest["duration_seconds"] = result.duration_seconds;
  json counts = json::object();
  for (const auto& [name, count] : result.row_counts) counts[name] = count;
  manifest["row_counts"] = counts;
  manifest["warnings"] = cfg.warnings;
  if (!cfg.config_echo.empty())
    manifest["config"] = json::parse(cfg.config_echo);
  switch (cfg.kind) {
    case ExperimentKind::DelocSurvey: manifest["kind"] = "deloc_survey"; break;
    case ExperimentKind::DensityCurve: manifest["kind"] = "density_curve"; break;
    case ExperimentKind::SmallballAudit: manifest["kind"] = "smallball_audit"; break;
    case ExperimentKind::GraphAudit: manifest["kind"] = "graph_audit"; break;
    case ExperimentKind::Braess: manifest["kind"] = "braess"; break;
    case ExperimentKind::Nodal: manifest["kind"] = "nodal"; break;
  }
  write_file(std::filesystem::path(cfg.out_dir) / "manifest.json",
             manifest.dump(2) + "\n");
  return result;
}

}  // namespace deloc
