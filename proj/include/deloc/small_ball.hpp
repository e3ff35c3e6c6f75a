#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "deloc/distributions.hpp"
#include "deloc/linalg.hpp"

namespace deloc {

// --- Levy concentration -------------------------------------------------------

//! 1-D estimator: exact sliding-window maximum of the fraction of samples in
//! a closed interval of length 2r. No binning, so the sup over centers is
//! attained exactly on the sample.
double levy_concentration(const std::vector<double>& samples, double r);

//! Multi-D estimator (rows are samples): maximum over sample-centered balls
//! of radius r, centers capped at max_centers (taken in sample order). The
//! value brackets the true concentration function between L(Y, r) minus
//! statistical error and L(Y, 2r).
double levy_concentration(const Eigen::MatrixXd& samples, double r,
                          int max_centers = 4000);

// --- characteristic function decay ---------------------------------------------

struct SuperlevelReport {
  double t = 0.0;
  double measure = 0.0;     // Lebesgue measure of {x : |phi(x)| > t}
  double bound_low = 0.0;   // 2*pi/t^2         (low-t regime)
  double bound_high = 0.0;  // C*sqrt(1 - t^2)  (high-t regime)
  bool holds_low = false;
  bool holds_high = false;
  bool low_regime = false;  // t < 3/4
};

//! Superlevel-set measure of |phi_X| for a continuous law with essential-sup
//! density exactly 1 (the caller rescales). Grid integration with an
//! analytically certified window; both decay bounds are reported.
SuperlevelReport superlevel_measure(const DistributionSpec& d, double t,
                                    double halasz_C = 10.0);

// --- Fourier inversion densities ------------------------------------------------

//! Weighted sum of independent continuous entries, sum of squared weights 1.
//! smoothing_sigma adds an independent N(0, sigma^2); it is required when the
//! characteristic-function product is not absolutely integrable (fewer than
//! two uniform factors and no gaussian factor).
struct WeightedSumSpec {
  std::vector<DistributionSpec> dists;
  std::vector<double> weights;
  double smoothing_sigma = 0.0;

  void validate() const;
};

struct DensityCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double grid_step = 0.0;
  double truncation_window = 0.0;
  double integral = 0.0;  // trapezoid mass over the grid
};

//! Density of sum a_j X_j (plus optional smoothing) by numeric Fourier
//! inversion of the closed-form characteristic-function product. The
//! truncation window is chosen so the certified tail error is below 1e-6;
//! for exactly two uniform factors the slowly decaying tail is integrated in
//! closed form instead of being truncated.
DensityCurve weighted_sum_density(const WeightedSumSpec& spec,
                                  const std::vector<double>& eval_points);

//! Single-point convenience wrapper.
double weighted_sum_density_at(const WeightedSumSpec& spec, double s);

struct ProjectionDensityReport {
  int dim = 0;
  double sup = 0.0;
  double stat_error = 0.0;  // zero for the exact 1-D route
  double bound = 0.0;       // (C*K)^d
  bool holds = false;
};

struct ProjectionDensityOptions {
  double C = 10.0;          // constant in the (C*K)^d bound
  int mc_samples = 200000;  // d = 2 histogram sample count
  double bin_width = 0.05;  // d = 2 histogram bin width
  std::uint64_t seed = 1;
};

//! Sup of the density of the projection of X (independent coordinates with
//! bounded densities) onto a d-dimensional subspace, d <= 2. d = 1 evaluates
//! the weighted-sum density on a fine grid; d = 2 uses a Monte Carlo
//! histogram with error bars.
ProjectionDensityReport projection_density_sup(
    const std::vector<DistributionSpec>& dists, const RealSubspaceBasis& P,
    const ProjectionDensityOptions& options = {});

// --- small ball of ||Gx|| -------------------------------------------------------

struct SmallBallGxReport {
  double theta = 0.0;
  double empirical = 0.0;      // fraction of trials with ||Gx|| <= theta*sqrt(l)
  double bound = 0.0;          // (C0*theta)^l
  bool holds = false;
  double row_empirical = 0.0;  // empirical CDF of |<G_j, x>| at theta
  double row_bound = 0.0;      // C0*K*theta
  bool row_holds = false;
  double c0_min = 0.0;         // smallest C0 making the ||Gx|| bound hold
};

//! Monte Carlo audit of the fixed-vector small-ball bound
//! P(||Gx|| <= theta*sqrt(l)) <= (C0*theta)^l, with the per-row bound
//! P(|<G_j, x>| <= theta) <= C0*K*theta tabulated from the same trials.
SmallBallGxReport small_ball_gx(int l, int m, const DistributionSpec& entry,
                                const Eigen::VectorXcd& x, double theta,
                                int trials, std::uint64_t master_seed,
                                double C0 = 3.0);

// --- tensorization audits --------------------------------------------------------

enum class TensorizationKind { Z1Z2, Product };

struct TensorizationParams {
  int d = 5;       // Z1Z2 kind: dimension in the (M t)^d bound
  double M = 4.0;  // Z1Z2 kind: must be >= the configured guard
  int l = 8;       // product kind: number of factors
  double C = 1.0;  // product kind: P(V_j < t) <= C t
};

struct TensorizationRow {
  double t = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // 3 sigma Monte Carlo allowance
  bool holds = false;
};

//! Audits the two tensorization bounds on synthetic laws meeting the
//! hypotheses exactly. Z1Z2: P(sqrt(Z1^2+Z2^2) <= t*sqrt(d)) <= (M t)^d with
//! Z1 uniform on [0, 1/2] and Z2 = sqrt(d-1) U^{1/(d-1)} / M. Product:
//! P(sum V_j^2 < t^2 l) <= (e*sqrt(pi)/2 * C * t)^l with V_j uniform on
//! [0, 1/C].
std::vector<TensorizationRow> tensorization_audit(
    TensorizationKind kind, const TensorizationParams& params,
    const std::vector<double>& t_grid, int samples, std::uint64_t seed,
    double M_guard = 4.0);

// --- randomization of coordinates -------------------------------------------------

struct RandomizeAudit {
  double lhs = 0.0;  // L(P_E Z, r)
  double rhs = 0.0;  // sqrt(L(P_Real(E) Zhat, 2r))
  double margin = 0.0;
  bool holds = false;
};

//! Audits L(P_E Z, r) <= sqrt(L(P_Real(E) Zhat, 2r)) where Z = X + iY has a
//! fixed imaginary part and Zhat stacks two independent real copies of X.
//! The two sides are independent Monte Carlo estimates.
RandomizeAudit randomize_coordinates_audit(
    int N, const DistributionSpec& dist, const SubspaceBasis& E, double r,
    int trials, std::uint64_t seed,
    const std::optional<Eigen::VectorXd>& fixed_imag = std::nullopt);

}  // namespace deloc
