#include "deloc/graphs.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "deloc/errors.hpp"
#include "deloc/thread_pool.hpp"

namespace deloc {

bool GraphSample::has_edge(int u, int v) const {
  if (u == v) return false;
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

GraphSample GraphSample::from_edges(int n,
                                    std::vector<std::pair<int, int>> edges,
                                    double p) {
  if (n < 2) throw ArgumentError("graph: needs at least 2 vertices");
  GraphSample G;
  G.n = n;
  for (auto& [u, v] : edges) {
    if (u == v) throw ArgumentError("graph: self-loop rejected");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ArgumentError("graph: vertex index out of range");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  G.edges = std::move(edges);
  G.adj.assign(n, {});
  for (const auto& [u, v] : G.edges) {
    G.adj[u].push_back(v);
    G.adj[v].push_back(u);
  }
  for (auto& nb : G.adj) std::sort(nb.begin(), nb.end());
  G.degrees.resize(n);
  for (int i = 0; i < n; ++i) G.degrees[i] = static_cast<int>(G.adj[i].size());
  G.p = p > 0.0 ? p
                : static_cast<double>(G.edges.size()) /
                      (static_cast<double>(n) * (n - 1) / 2.0);
  return G;
}

GraphSample sample_gnp(int n, double p, const Seed& seed) {
  if (n < 2) throw ArgumentError("sample_gnp: n must be >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw ArgumentError("sample_gnp: p must lie in (0, 1)");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      Rng rng = pair_stream(seed, StreamDomain::GraphPair, u, v);
      if (rng.next_unit() < p) edges.emplace_back(u, v);
    }
  }
  GraphSample G = GraphSample::from_edges(n, std::move(edges), p);
  G.seed = seed;
  return G;
}

GraphSample load_edge_list(std::istream& in) {
  int n = 0;
  long long m = 0;
  if (!(in >> n >> m)) throw ArgumentError("edge list: bad header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(std::max(m, 0LL)));
  for (long long k = 0; k < m; ++k) {
    int u, v;
    if (!(in >> u >> v)) throw ArgumentError("edge list: truncated input");
    edges.emplace_back(u, v);
  }
  return GraphSample::from_edges(n, std::move(edges));
}

GraphSample load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("edge list: cannot open " + path);
  return load_edge_list(in);
}

void save_edge_list(const GraphSample& G, std::ostream& out) {
  out << G.n << ' ' << G.edges.size() << '\n';
  for (const auto& [u, v] : G.edges) out << u << ' ' << v << '\n';
}

GraphMatrices graph_matrices(const GraphSample& G) {
  for (int i = 0; i < G.n; ++i)
    if (G.degrees[i] == 0)
      throw DegeneracyError("graph_matrices: isolated vertex " +
                            std::to_string(i));
  GraphMatrices M;
  M.adjacency = Eigen::MatrixXd::Zero(G.n, G.n);
  for (const auto& [u, v] : G.edges) {
    M.adjacency(u, v) = 1.0;
    M.adjacency(v, u) = 1.0;
  }
  M.degrees.resize(G.n);
  for (int i = 0; i < G.n; ++i) M.degrees(i) = G.degrees[i];
  const Eigen::VectorXd dinv = M.degrees.array().rsqrt();
  M.normalized_adjacency =
      dinv.asDiagonal() * M.adjacency * dinv.asDiagonal();
  // Symmetrize away the last-bit asymmetry of the two diagonal scalings.
  M.normalized_adjacency =
      0.5 * (M.normalized_adjacency + M.normalized_adjacency.transpose()).eval();
  M.laplacian =
      Eigen::MatrixXd::Identity(G.n, G.n) - M.normalized_adjacency;
  return M;
}

// --- property audit ----------------------------------------------------------

long long count_non_edges(const GraphSample& G, const std::vector<int>& J) {
  for (int v : J)
    if (v < 0 || v >= G.n)
      throw ArgumentError("count_non_edges: vertex out of range");
  std::vector<char> dense(static_cast<std::size_t>(G.n) * G.n, 0);
  for (const auto& [u, v] : G.edges) {
    dense[static_cast<std::size_t>(u) * G.n + v] = 1;
    dense[static_cast<std::size_t>(v) * G.n + u] = 1;
  }
  long long inside_edges = 0;
  for (std::size_t a = 0; a < J.size(); ++a)
    for (std::size_t b = a + 1; b < J.size(); ++b)
      if (dense[static_cast<std::size_t>(J[a]) * G.n + J[b]]) ++inside_edges;
  const long long pairs = static_cast<long long>(J.size()) *
                          (static_cast<long long>(J.size()) - 1) / 2;
  return pairs - inside_edges;
}

namespace {

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace

std::vector<PropertyReport> gnp_property_audit(const GraphSample& G,
                                               double C_audit,
                                               std::uint64_t audit_seed) {
  const int n = G.n;
  const double p = G.p;
  const double np = n * p;
  const double logn = std::log(static_cast<double>(n));
  Rng rng = stream(Seed{audit_seed == 0 ? G.seed.master : audit_seed,
                        G.seed.trial},
                   StreamDomain::Audit);
  std::vector<PropertyReport> out;

  {  // (1) independent sets, greedy heuristic over 50 random orders
    PropertyReport r;
    r.name = "independent_set";
    r.heuristic = true;
    int largest = 0;
    for (int rep = 0; rep < 50; ++rep) {
      const std::vector<int> order = random_permutation(n, rng);
      std::vector<char> taken(n, 0), blocked(n, 0);
      int size = 0;
      for (int v : order) {
        if (blocked[v]) continue;
        taken[v] = 1;
        ++size;
        for (int u : G.adj[v]) blocked[u] = 1;
      }
      largest = std::max(largest, size);
    }
    r.observed = largest;
    r.bound = C_audit * logn / p;
    r.holds = r.observed <= r.bound;
    out.push_back(r);
  }

  {  // (2) crossing edges between random disjoint sets of the critical size
    PropertyReport r;
    r.name = "crossing_edges";
    const int k = static_cast<int>(std::ceil(C_audit * logn / p));
    int failures = 0;
    int reps = 0;
    if (2 * k <= n) {
      for (reps = 0; reps < 100; ++reps) {
        const std::vector<int> perm = random_permutation(n, rng);
        bool crossed = false;
        for (int a = 0; a < k && !crossed; ++a)
          for (int b = k; b < 2 * k && !crossed; ++b)
            if (G.has_edge(perm[a], perm[b])) crossed = true;
        if (!crossed) ++failures;
      }
    }
    r.observed = failures;
    r.observed2 = k;
    r.bound = 0.0;
    r.holds = (2 * k <= n) && failures == 0;
    out.push_back(r);
  }

  {  // (3) degree concentration
    PropertyReport r;
    r.name = "degrees";
    r.observed = *std::min_element(G.degrees.begin(), G.degrees.end());
    r.observed2 = *std::max_element(G.degrees.begin(), G.degrees.end());
    r.bound = np - logn * std::sqrt(np);
    r.bound2 = np + logn * std::sqrt(np);
    r.holds = r.observed >= r.bound && r.observed2 <= r.bound2;
    out.push_back(r);
  }

  {  // (4) normalized adjacency spectrum
    PropertyReport r;
    r.name = "normalized_spectrum";
    const GraphMatrices M = graph_matrices(G);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        M.normalized_adjacency, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalError("gnp_property_audit: eigensolver failed");
    const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
    const double top = ev(n - 1);
    double second = 0.0;
    for (int i = 0; i < n - 1; ++i) second = std::max(second, std::abs(ev(i)));
    r.observed = top;
    r.observed2 = second;
    r.bound = 1e-10;                      // |lambda_1 - 1| tolerance
    r.bound2 = C_audit / std::sqrt(np);   // |lambda_{j>=2}| bound
    r.holds = std::abs(top - 1.0) <= r.bound && second <= r.bound2;
    out.push_back(r);
  }

  {  // (5) non-edge counts of random subsets
    PropertyReport r;
    r.name = "non_edges";
    const double slack = std::pow(static_cast<double>(n), 1.5);
    double worst = 0.0;
    bool ok = true;
    for (int rep = 0; rep < 20; ++rep) {
      const int size = 2 + static_cast<int>(rng.next_below(n - 1));
      std::vector<int> perm = random_permutation(n, rng);
      perm.resize(size);
      const long long observed = count_non_edges(G, perm);
      const double expected =
          (1.0 - p) * (static_cast<double>(size) * (size - 1) / 2.0);
      const double dev = std::abs(observed - expected);
      worst = std::max(worst, dev);
      if (dev > slack) ok = false;
    }
    r.observed = worst;
    r.bound = slack;
    r.holds = ok;
    out.push_back(r);
  }

  return out;
}

// --- nodal domains -----------------------------------------------------------

namespace {

// Connected components of the induced subgraph on `support` (BFS).
std::vector<std::vector<int>> components_of(const GraphSample& G,
                                            const std::vector<char>& support) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(G.n, 0);
  std::vector<int> queue;
  for (int s = 0; s < G.n; ++s) {
    if (!support[s] || seen[s]) continue;
    std::vector<int> comp;
    queue.clear();
    queue.push_back(s);
    seen[s] = 1;
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      comp.push_back(v);
      for (int u : G.adj[v]) {
        if (support[u] && !seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace

NodalDecomposition nodal_domains(const GraphSample& G, const Eigen::VectorXd& v,
                                 double zero_tol) {
  if (v.size() != G.n)
    throw ArgumentError("nodal_domains: vector length mismatch");
  NodalDecomposition out;
  out.zero_tol = zero_tol;
  const double cutoff = zero_tol * v.cwiseAbs().maxCoeff();
  std::vector<char> pos(G.n, 0), neg(G.n, 0);
  for (int i = 0; i < G.n; ++i) {
    if (std::abs(v(i)) <= cutoff) {
      out.zero_set.push_back(i);
    } else if (v(i) > 0.0) {
      pos[i] = 1;
    } else {
      neg[i] = 1;
    }
  }
  out.positive_domains = components_of(G, pos);
  out.negative_domains = components_of(G, neg);
  return out;
}

CrossDomainReport cross_domain_degrees(const GraphSample& G,
                                       const Eigen::VectorXd& v,
                                       double zero_tol) {
  const NodalDecomposition nd = nodal_domains(G, v, zero_tol);
  std::vector<char> in_pos(G.n, 0), in_neg(G.n, 0);
  for (const auto& dom : nd.positive_domains)
    for (int i : dom) in_pos[i] = 1;
  for (const auto& dom : nd.negative_domains)
    for (int i : dom) in_neg[i] = 1;

  CrossDomainReport report;
  if (nd.positive_domains.empty() || nd.negative_domains.empty()) {
    report.ok = false;
    return report;
  }
  report.ok = true;
  report.min_pos_to_neg = G.n;
  report.min_neg_to_pos = G.n;
  for (int i = 0; i < G.n; ++i) {
    if (!in_pos[i] && !in_neg[i]) continue;
    int cross = 0;
    for (int u : G.adj[i])
      if (in_pos[i] ? in_neg[u] : in_pos[u]) ++cross;
    if (in_pos[i])
      report.min_pos_to_neg = std::min(report.min_pos_to_neg, cross);
    else
      report.min_neg_to_pos = std::min(report.min_neg_to_pos, cross);
  }
  return report;
}

// --- spectral gap and Braess -----------------------------------------------------

namespace {

void canonical_sign(Eigen::VectorXd& v) {
  int arg = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best) {
      best = m;
      arg = i;
    }
  }
  if (v(arg) < 0.0) v = -v;
}

}  // namespace

SpectralGapResult spectral_gap(const GraphSample& G) {
  const GraphMatrices M = graph_matrices(G);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M.laplacian);
  if (solver.info() != Eigen::Success)
    throw NumericalError("spectral_gap: eigensolver failed");
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending
  SpectralGapResult out;
  out.lambda1 = ev(0);
  out.lambda2 = ev(1);
  out.lambda3 = G.n > 2 ? ev(2) : ev(1);
  out.eigenvector = solver.eigenvectors().col(1);
  out.eigenvector.normalize();
  canonical_sign(out.eigenvector);
  out.degenerate_multiplicity =
      G.n > 2 &&
      std::abs(out.lambda3 - out.lambda2) <= default_tolerances().multiplicity_gap;
  return out;
}

BraessCondition braess_sufficient_condition(const GraphSample& G,
                                            const Eigen::VectorXd& x, int u,
                                            int w, double c1, double c2) {
  if (u == w || G.has_edge(u, w))
    throw ArgumentError("braess_sufficient_condition: (u, w) is not a non-edge");
  if (x.size() != G.n)
    throw ArgumentError("braess_sufficient_condition: vector length mismatch");
  // np is instantiated as the observable mean degree.
  const double np =
      2.0 * static_cast<double>(G.edges.size()) / static_cast<double>(G.n);
  BraessCondition cond;
  cond.degree_hypothesis_ok = true;
  for (int d : G.degrees) {
    if (d < 0.5 * np || d > 1.5 * np) {
      cond.degree_hypothesis_ok = false;
      break;
    }
  }
  const double lhs =
      (x(u) * x(u) + x(w) * x(w)) / std::sqrt(np) + c1 / (np * np);
  const double rhs = c2 * x(u) * x(w);
  cond.holds = lhs < rhs;
  return cond;
}

namespace {

double lambda2_with_edge(const GraphSample& G, const GraphMatrices& base,
                         int u, int w) {
  Eigen::MatrixXd A = base.adjacency;
  A(u, w) = 1.0;
  A(w, u) = 1.0;
  Eigen::VectorXd deg = base.degrees;
  deg(u) += 1.0;
  deg(w) += 1.0;
  const Eigen::VectorXd dinv = deg.array().rsqrt();
  Eigen::MatrixXd Ahat = dinv.asDiagonal() * A * dinv.asDiagonal();
  Ahat = 0.5 * (Ahat + Ahat.transpose()).eval();
  const Eigen::MatrixXd L =
      Eigen::MatrixXd::Identity(G.n, G.n) - Ahat;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("a_minus: eigensolver failed on augmented graph");
  return solver.eigenvalues()(1);
}

}  // namespace

BraessReport a_minus(const GraphSample& G, const AMinusOptions& options) {
  if (G.non_edge_count() == 0)
    throw NoNonEdgesError("a_minus: graph is complete");
  if (options.exact && G.n > options.exact_guard_n)
    throw ArgumentError("a_minus: exact mode guarded to n <= " +
                        std::to_string(options.exact_guard_n) +
                        "; use sampled mode");

  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < G.n; ++u)
    for (int v = u + 1; v < G.n; ++v)
      if (!G.has_edge(u, v)) candidates.emplace_back(u, v);

  if (!options.exact) {
    if (options.sample_m < 1)
      throw ArgumentError("a_minus: sampled mode needs m >= 1");
    const int m =
        std::min<int>(options.sample_m, static_cast<int>(candidates.size()));
    Rng rng = stream(Seed{options.sample_seed, 0}, StreamDomain::Audit);
    // Partial Fisher-Yates, then restore deterministic (u, w) order.
    for (int i = 0; i < m; ++i) {
      const int j =
          i + static_cast<int>(rng.next_below(candidates.size() - i));
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(m);
    std::sort(candidates.begin(), candidates.end());
  }

  const GraphMatrices base = graph_matrices(G);
  const SpectralGapResult gap = spectral_gap(G);

  BraessReport report;
  report.lambda2_base = gap.lambda2;
  report.exact_mode = options.exact;
  report.sampled_m = options.exact ? 0 : static_cast<int>(candidates.size());
  report.tested.resize(candidates.size());

  parallel_for(
      static_cast<int>(candidates.size()), options.threads, [&](int i) {
        const auto [u, w] = candidates[i];
        BraessPair pair;
        pair.u = u;
        pair.w = w;
        pair.lambda2_new = lambda2_with_edge(G, base, u, w);
        pair.tie =
            std::abs(pair.lambda2_new - gap.lambda2) <= options.tie_tol;
        pair.decreased = pair.lambda2_new < gap.lambda2 - options.tie_tol;
        pair.sufficient_condition =
            braess_sufficient_condition(G, gap.eigenvector, u, w, options.c1,
                                        options.c2)
                .holds;
        report.tested[i] = pair;
      });

  for (const BraessPair& pair : report.tested)
    if (pair.decreased) ++report.n_decreased;
  report.a_minus = report.tested.empty()
                       ? 0.0
                       : static_cast<double>(report.n_decreased) /
                             static_cast<double>(report.tested.size());
  return report;
}

LaplacianDelocReport laplacian_deloc_audit(const GraphSample& G,
                                           const std::vector<double>& eps_grid) {
  const SpectralGapResult gap = spectral_gap(G);
  LaplacianDelocReport report;
  report.degenerate = gap.degenerate_multiplicity;
  report.linf = gap.eigenvector.cwiseAbs().maxCoeff();
  const double cutoff =
      std::pow(static_cast<double>(G.n), -0.625);  // n^{-5/8}
  int below = 0;
  for (int i = 0; i < G.n; ++i)
    if (std::abs(gap.eigenvector(i)) < cutoff) ++below;
  report.frac_below = static_cast<double>(below) / G.n;
  report.profile = mass_profile(gap.eigenvector, eps_grid);
  return report;
}

}  // namespace deloc
