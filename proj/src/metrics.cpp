#include "deloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "deloc/errors.hpp"
#include "deloc/thread_pool.hpp"

namespace deloc {

namespace {

// Shared implementation on coordinate magnitudes. k = ceil(eps*n); the k
// smallest magnitudes realize the subset minimum.
MinMassResult min_mass_from_abs(const Eigen::VectorXd& absv,
                                const Eigen::VectorXd& sq, double eps) {
  const int n = static_cast<int>(absv.size());
  if (n == 0) throw ArgumentError("min_mass: empty vector");
  if (eps * n < 1.0)
    throw ArgumentError("min_mass: eps*n < 1 (subset size must be >= 1)");
  int k = static_cast<int>(std::ceil(eps * n - 1e-12));
  k = std::min(std::max(k, 1), n);

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  // Ties broken by lowest index; the mass value itself is tie-independent.
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (absv(a) != absv(b)) return absv(a) < absv(b);
    return a < b;
  });

  MinMassResult out;
  out.indices.assign(idx.begin(), idx.begin() + k);
  std::sort(out.indices.begin(), out.indices.end());
  double mass2 = 0.0;
  for (int i : out.indices) mass2 += sq(i);
  out.mass = std::sqrt(mass2);
  return out;
}

void require_unit(double norm) {
  if (std::abs(norm - 1.0) > 1e-10)
    throw ArgumentError("min_mass: vector is not unit norm");
}

}  // namespace

MinMassResult min_mass(const Eigen::VectorXcd& v, double eps) {
  require_unit(v.norm());
  return min_mass_from_abs(v.cwiseAbs(), v.cwiseAbs2(), eps);
}

MinMassResult min_mass(const Eigen::VectorXd& v, double eps) {
  require_unit(v.norm());
  return min_mass_from_abs(v.cwiseAbs(), v.cwiseAbs2(), eps);
}

namespace {

template <typename Vec>
MassProfile mass_profile_impl(const Vec& v, const std::vector<double>& grid) {
  MassProfile p;
  p.n = static_cast<int>(v.size());
  p.eps_grid = grid;
  p.min_mass.reserve(grid.size());
  for (double eps : grid) p.min_mass.push_back(min_mass(v, eps).mass);
  p.linf = v.cwiseAbs().maxCoeff();
  return p;
}

}  // namespace

MassProfile mass_profile(const Eigen::VectorXcd& v,
                         const std::vector<double>& eps_grid) {
  return mass_profile_impl(v, eps_grid);
}
MassProfile mass_profile(const Eigen::VectorXd& v,
                         const std::vector<double>& eps_grid) {
  return mass_profile_impl(v, eps_grid);
}

LocReport localization_event(const SpectralData& S, double eps, double delta) {
  LocReport report;
  report.eps = eps;
  report.delta = delta;
  for (int k = 0; k < S.n(); ++k) {
    const MinMassResult mm = min_mass(Eigen::VectorXcd(S.eigenvectors.col(k)), eps);
    if (mm.mass < delta) {
      report.event = true;
      report.witness = LocWitness{k, mm.indices, mm.mass};
      break;
    }
  }
  return report;
}

bool approx_localization_event(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& v,
                               std::complex<double> lambda, double eps,
                               double delta, double M) {
  const double root_n = std::sqrt(static_cast<double>(A.rows()));
  if (std::abs(lambda) > M * root_n)
    throw ArgumentError("approx_localization_event: |lambda| exceeds M*sqrt(n)");
  const double residual = (A * v - lambda * v).norm();
  if (residual > M * delta * root_n) return false;
  return min_mass(v, eps).mass < delta;
}

SurveyResult deloc_survey(const EnsembleSpec& spec, int trials,
                          const std::vector<double>& eps_grid,
                          std::uint64_t master_seed,
                          const SurveyOptions& options) {
  spec.validate();
  if (trials < 1) throw ArgumentError("deloc_survey: trials must be >= 1");
  if (eps_grid.empty()) throw ArgumentError("deloc_survey: empty eps grid");

  struct TrialOut {
    std::vector<SurveyRow> rows;
    bool loc_event = false;
  };
  std::vector<TrialOut> per_trial(trials);

  const bool self_adjoint = spec.symmetry == Symmetry::Symmetric &&
                            !spec.fixed_imaginary.has_value();

  parallel_for(trials, options.threads, [&](int t) {
    const Seed seed{master_seed, static_cast<std::uint64_t>(t)};
    SpectralData S;
    try {
      if (self_adjoint) {
        Eigen::MatrixXd A = sample_real(spec, seed);
        if (spec.shift_mu != 0.0) A = shift_matrix(A, spec.shift_mu);
        S = eigenpairs(A, true);
      } else {
        Eigen::MatrixXcd A = sample_matrix(spec, seed);
        if (spec.shift_mu != 0.0) A = shift_matrix(A, spec.shift_mu);
        S = eigenpairs(A);
      }
    } catch (const NumericalError& e) {
      throw NumericalError(e.what(), master_seed,
                           static_cast<std::uint64_t>(t));
    }
    TrialOut& out = per_trial[t];
    out.rows.reserve(S.n());
    for (int k = 0; k < S.n(); ++k) {
      SurveyRow row;
      row.trial = t;
      row.eig_index = k;
      row.eigenvalue = S.eigenvalues(k);
      const MassProfile p =
          mass_profile(Eigen::VectorXcd(S.eigenvectors.col(k)), eps_grid);
      row.linf = p.linf;
      row.min_mass = p.min_mass;
      out.rows.push_back(std::move(row));
    }
    out.loc_event =
        localization_event(S, options.loc_eps, options.loc_delta).event;
  });

  SurveyResult result;
  result.summary.eps_grid = eps_grid;
  result.summary.min_min_mass.assign(eps_grid.size(), 1.0);
  result.summary.trials = trials;
  result.summary.loc_eps = options.loc_eps;
  result.summary.loc_delta = options.loc_delta;
  for (const TrialOut& t : per_trial) {
    for (const SurveyRow& row : t.rows) {
      result.summary.max_linf = std::max(result.summary.max_linf, row.linf);
      for (std::size_t g = 0; g < eps_grid.size(); ++g)
        result.summary.min_min_mass[g] =
            std::min(result.summary.min_min_mass[g], row.min_mass[g]);
      result.rows.push_back(row);
    }
    if (t.loc_event) ++result.summary.loc_events;
  }
  return result;
}

}  // namespace deloc
