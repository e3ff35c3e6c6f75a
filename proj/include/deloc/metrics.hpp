#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "deloc/ensembles.hpp"
#include "deloc/linalg.hpp"

namespace deloc {

struct MinMassResult {
  double mass = 0.0;
  std::vector<int> indices;  // the minimizing coordinate set, sorted
};

//! Minimum l2 mass over coordinate subsets of size ceil(eps*n) of a unit
//! vector: sorting |v_i| realizes the minimum, ties broken by lowest index.
//! Requires eps*n >= 1 and ||v||_2 = 1 up to 1e-10.
MinMassResult min_mass(const Eigen::VectorXcd& v, double eps);
MinMassResult min_mass(const Eigen::VectorXd& v, double eps);

//! eps -> min_mass curve plus the sup norm of the vector.
struct MassProfile {
  int n = 0;
  std::vector<double> eps_grid;
  std::vector<double> min_mass;
  double linf = 0.0;
};

MassProfile mass_profile(const Eigen::VectorXcd& v,
                         const std::vector<double>& eps_grid);
MassProfile mass_profile(const Eigen::VectorXd& v,
                         const std::vector<double>& eps_grid);

struct LocWitness {
  int eig_index = 0;
  std::vector<int> I;
  double mass = 0.0;
};

//! Localization event: some eigenvector owns a coordinate set of size
//! ceil(eps*n) with mass below delta. The witness is the first offender in
//! eigenvalue order.
struct LocReport {
  bool event = false;
  std::optional<LocWitness> witness;
  double eps = 0.0;
  double delta = 0.0;
};

LocReport localization_event(const SpectralData& S, double eps, double delta);

//! Approximate-eigenvector variant: ||(A - lambda) v||_2 <= M*delta*sqrt(n)
//! and min_mass(v, eps) < delta. Requires |lambda| <= M*sqrt(n).
bool approx_localization_event(const Eigen::MatrixXcd& A,
                               const Eigen::VectorXcd& v,
                               std::complex<double> lambda, double eps,
                               double delta, double M);

// --- ensemble survey ---------------------------------------------------------

struct SurveyRow {
  int trial = 0;
  int eig_index = 0;
  std::complex<double> eigenvalue;
  double linf = 0.0;
  std::vector<double> min_mass;  // aligned with the eps grid
};

struct SurveySummary {
  std::vector<double> eps_grid;
  std::vector<double> min_min_mass;  // per grid point, min over all rows
  double max_linf = 0.0;
  int loc_events = 0;  // trials on which localization_event fired
  int trials = 0;
  double loc_eps = 0.0;
  double loc_delta = 0.0;
};

struct SurveyResult {
  std::vector<SurveyRow> rows;  // sorted by (trial, eig_index)
  SurveySummary summary;
};

struct SurveyOptions {
  double loc_eps = 0.1;
  double loc_delta = 1e-4;
  int threads = 1;
};

//! Samples `trials` matrices from the ensemble (applying the shift when
//! shift_mu != 0), eigendecomposes each, and tabulates mass profiles. Rows
//! are deterministic in (spec, trials, master_seed) and independent of the
//! thread count.
SurveyResult deloc_survey(const EnsembleSpec& spec, int trials,
                          const std::vector<double>& eps_grid,
                          std::uint64_t master_seed,
                          const SurveyOptions& options = {});

}  // namespace deloc
