#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "deloc/metrics.hpp"
#include "deloc/seed.hpp"

namespace deloc {

//! Simple undirected loop-free graph with its generation metadata.
struct GraphSample {
  int n = 0;
  double p = 0.0;  // generation parameter (edge density estimate for imports)
  Seed seed;
  std::vector<std::pair<int, int>> edges;  // u < v, lexicographically sorted
  std::vector<std::vector<int>> adj;       // sorted neighbor lists
  std::vector<int> degrees;

  bool has_edge(int u, int v) const;
  long long edge_count() const { return static_cast<long long>(edges.size()); }
  long long non_edge_count() const {
    return static_cast<long long>(n) * (n - 1) / 2 - edge_count();
  }

  //! Builds adjacency/degrees from an edge list; validates symmetry and the
  //! absence of loops.
  static GraphSample from_edges(int n, std::vector<std::pair<int, int>> edges,
                                double p = 0.0);
};

//! G(n, p): each unordered pair included independently with probability p,
//! drawn from the pair's own substream. Deterministic per seed.
GraphSample sample_gnp(int n, double p, const Seed& seed);

//! Edge-list text format: header "<n> <edge_count>", then one "u v" per line,
//! 0-indexed.
GraphSample load_edge_list(std::istream& in);
GraphSample load_edge_list_file(const std::string& path);
void save_edge_list(const GraphSample& G, std::ostream& out);

struct GraphMatrices {
  Eigen::MatrixXd adjacency;
  Eigen::VectorXd degrees;
  Eigen::MatrixXd normalized_adjacency;  // D^{-1/2} A D^{-1/2}
  Eigen::MatrixXd laplacian;             // I - normalized_adjacency
};

//! Dense matrices of the graph. Throws DegeneracyError on isolated vertices
//! (the normalized Laplacian is undefined there).
GraphMatrices graph_matrices(const GraphSample& G);

//! Number of unordered non-adjacent pairs inside the vertex set J.
long long count_non_edges(const GraphSample& G, const std::vector<int>& J);

// --- property audit ----------------------------------------------------------

struct PropertyReport {
  std::string name;
  double observed = 0.0;   // primary observed value
  double observed2 = 0.0;  // secondary (e.g. max degree), when meaningful
  double bound = 0.0;
  double bound2 = 0.0;
  bool holds = false;
  bool heuristic = false;  // greedy independent-set item only
};

//! Audits the standard G(n,p) properties: (1) greedy independent sets vs
//! C log n / p (heuristic), (2) crossing edges between random disjoint sets,
//! (3) degree concentration, (4) normalized-adjacency spectrum, (5) non-edge
//! counts of random vertex subsets.
std::vector<PropertyReport> gnp_property_audit(const GraphSample& G,
                                               double C_audit,
                                               std::uint64_t audit_seed = 0);

// --- nodal domains -----------------------------------------------------------

struct NodalDecomposition {
  std::vector<std::vector<int>> positive_domains;
  std::vector<std::vector<int>> negative_domains;
  std::vector<int> zero_set;
  double zero_tol = 0.0;

  int domain_count() const {
    return static_cast<int>(positive_domains.size() + negative_domains.size());
  }
};

//! Connected components of the positive and negative supports of v. A
//! coordinate lands in the zero set when |v_i| <= zero_tol * ||v||_inf.
NodalDecomposition nodal_domains(const GraphSample& G, const Eigen::VectorXd& v,
                                 double zero_tol = 1e-12);

struct CrossDomainReport {
  bool ok = false;          // false when P or N is empty
  int min_pos_to_neg = 0;   // min over P of |Gamma(v) cap N|
  int min_neg_to_pos = 0;   // min over N of |Gamma(v) cap P|
};

CrossDomainReport cross_domain_degrees(const GraphSample& G,
                                       const Eigen::VectorXd& v,
                                       double zero_tol = 1e-12);

// --- spectral gap and the Braess fraction --------------------------------------

struct SpectralGapResult {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  Eigen::VectorXd eigenvector;  // of lambda2, canonical sign
  bool degenerate_multiplicity = false;  // |lambda2 - lambda3| <= 1e-8
};

SpectralGapResult spectral_gap(const GraphSample& G);

struct BraessCondition {
  bool holds = false;              // the sufficient-condition inequality
  bool degree_hypothesis_ok = false;  // all degrees within [np/2, 3np/2]
};

//! Deterministic sufficient condition for a non-edge (u, w) to decrease the
//! spectral gap, evaluated with np taken as the mean degree. Throws
//! ArgumentError when (u, w) is an edge.
BraessCondition braess_sufficient_condition(const GraphSample& G,
                                            const Eigen::VectorXd& x, int u,
                                            int w, double c1, double c2);

struct BraessPair {
  int u = 0, w = 0;
  double lambda2_new = 0.0;
  bool decreased = false;
  bool tie = false;  // |lambda2_new - lambda2_base| within the tie band
  bool sufficient_condition = false;
};

struct BraessReport {
  double lambda2_base = 0.0;
  std::vector<BraessPair> tested;  // ordered by (u, w)
  long long n_decreased = 0;
  double a_minus = 0.0;
  bool exact_mode = true;
  int sampled_m = 0;
};

struct AMinusOptions {
  bool exact = true;
  int sample_m = 0;            // sampled mode: number of non-edges
  std::uint64_t sample_seed = 0;
  double tie_tol = 1e-10;
  double c1 = 1.0;
  double c2 = 0.5;
  int threads = 1;
  int exact_guard_n = 150;
};

//! Fraction of non-edges whose addition decreases the spectral gap; each
//! tested pair gets a from-scratch dense eigensolve of the augmented
//! normalized Laplacian. Pairs within the tie band count as not-decreased.
//! Throws NoNonEdgesError on complete graphs; exact mode is guarded to
//! n <= exact_guard_n.
BraessReport a_minus(const GraphSample& G, const AMinusOptions& options = {});

struct LaplacianDelocReport {
  double linf = 0.0;
  double frac_below = 0.0;  // fraction of coordinates with |f_v| < n^{-5/8}
  MassProfile profile;
  bool degenerate = false;
};

//! Delocalization statistics of the spectral-gap eigenvector.
LaplacianDelocReport laplacian_deloc_audit(
    const GraphSample& G,
    const std::vector<double>& eps_grid = {0.05, 0.1, 0.2, 0.3, 0.5});

}  // namespace deloc
