#include "deloc/small_ball.hpp"

#include <algorithm>
#include <cmath>

#include "deloc/errors.hpp"
#include "deloc/seed.hpp"

namespace deloc {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

//! Sine integral Si(z) = int_0^z sin(t)/t dt. Power series below 6, rational
//! auxiliary-function approximation above (absolute error below 1e-6, which
//! is what the certified Fourier tails need).
double sine_integral(double z) {
  const double x = std::abs(z);
  double si;
  if (x <= 6.0) {
    // sum_{k>=0} (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    double t = x;  // x^{2k+1}/(2k+1)!
    si = x;
    for (int k = 1; k <= 40; ++k) {
      t *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
      si += t / (2.0 * k + 1.0);
      if (std::abs(t) < 1e-18) break;
    }
  } else {
    const double x2 = x * x;
    const double f =
        (1.0 / x) *
        (x2 * x2 * x2 * x2 + 38.027264 * x2 * x2 * x2 + 265.187033 * x2 * x2 +
         335.67732 * x2 + 38.102495) /
        (x2 * x2 * x2 * x2 + 40.021433 * x2 * x2 * x2 + 322.624911 * x2 * x2 +
         570.23628 * x2 + 157.105423);
    const double g =
        (1.0 / x2) *
        (x2 * x2 * x2 * x2 + 42.242855 * x2 * x2 * x2 + 302.757865 * x2 * x2 +
         352.018498 * x2 + 21.821899) /
        (x2 * x2 * x2 * x2 + 48.196927 * x2 * x2 * x2 + 482.485984 * x2 * x2 +
         1114.978885 * x2 + 449.690326);
    si = 0.5 * kPi - f * std::cos(x) - g * std::sin(x);
  }
  return z < 0.0 ? -si : si;
}

//! Exact int_T^inf cos(w x) / x^2 dx (w >= 0). For w = 0 this is 1/T.
double cos_over_x2_tail(double w, double T) {
  if (w == 0.0) return 1.0 / T;
  return std::cos(w * T) / T - w * (0.5 * kPi - sine_integral(w * T));
}

}  // namespace

// --- Levy concentration -------------------------------------------------------

double levy_concentration(const std::vector<double>& samples, double r) {
  if (samples.size() < 2)
    throw ArgumentError("levy_concentration: needs at least 2 samples");
  if (r < 0.0) throw ArgumentError("levy_concentration: r must be >= 0");
  std::vector<double> x = samples;
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::size_t best = 1;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < i) j = i;
    while (j + 1 < n && x[j + 1] <= x[i] + 2.0 * r) ++j;
    best = std::max(best, j - i + 1);
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

double levy_concentration(const Eigen::MatrixXd& samples, double r,
                          int max_centers) {
  const int n = static_cast<int>(samples.rows());
  if (n < 2)
    throw ArgumentError("levy_concentration: needs at least 2 samples");
  if (r < 0.0) throw ArgumentError("levy_concentration: r must be >= 0");
  const int centers = std::min(n, std::max(1, max_centers));
  const double r2 = r * r;
  int best = 1;
  for (int c = 0; c < centers; ++c) {
    const auto d2 =
        (samples.rowwise() - samples.row(c)).rowwise().squaredNorm();
    best = std::max(best, static_cast<int>((d2.array() <= r2).count()));
  }
  return static_cast<double>(best) / static_cast<double>(n);
}

// --- characteristic function decay ---------------------------------------------

SuperlevelReport superlevel_measure(const DistributionSpec& d, double t,
                                    double halasz_C) {
  if (!(t > 0.0 && t < 1.0))
    throw ArgumentError("superlevel_measure: t must lie in (0, 1)");
  const auto K = density_bound(d);
  if (!K || std::abs(*K - 1.0) > 1e-9)
    throw ArgumentError(
        "superlevel_measure: law must be continuous with density bound 1");

  // Window outside of which |phi| <= t, from the closed-form envelopes.
  double T;
  if (d.kind == DistKind::Uniform) {
    const double w = d.b - d.a;  // equals 1 here
    T = 2.0 / (w * t) + 1.0;
  } else {
    const double sigma = d.sigma;
    T = std::sqrt(2.0 * std::log(1.0 / t)) / sigma + 1.0;
  }

  const double step = 1e-3;
  const std::int64_t count = static_cast<std::int64_t>(T / step) + 1;
  std::int64_t inside = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * step;
    if (std::abs(char_fn(d, x)) > t) ++inside;
  }

  SuperlevelReport report;
  report.t = t;
  report.measure = 2.0 * step * static_cast<double>(inside);
  report.bound_low = 2.0 * kPi / (t * t);
  report.bound_high = halasz_C * std::sqrt(1.0 - t * t);
  report.holds_low = report.measure <= report.bound_low;
  report.holds_high = report.measure <= report.bound_high;
  report.low_regime = t < 0.75;
  return report;
}

// --- Fourier inversion densities ------------------------------------------------

void WeightedSumSpec::validate() const {
  if (dists.size() != weights.size())
    throw SpecError("weighted sum spec: dists/weights length mismatch");
  if (dists.empty()) throw SpecError("weighted sum spec: empty factor list");
  double sum2 = 0.0;
  for (std::size_t j = 0; j < dists.size(); ++j) {
    dists[j].validate();
    if (!dists[j].is_continuous())
      throw SpecError("weighted sum spec: factor " + std::to_string(j) +
                      " is not a continuous kind");
    sum2 += weights[j] * weights[j];
  }
  if (std::abs(sum2 - 1.0) > 1e-10)
    throw SpecError("weighted sum spec: weights must satisfy sum a_j^2 = 1");
  if (smoothing_sigma < 0.0)
    throw SpecError("weighted sum spec: smoothing_sigma must be >= 0");
}

namespace {

struct InversionPlan {
  std::vector<double> betas;   // uniform factors: |a_j| (b-a) / 2
  double theta = 0.0;          // total phase drift, sum a_j * center_j
  double gamma = 0.0;          // total gaussian exponent coefficient of x^2
  double T = 0.0;              // truncation window
  bool exact_tail = false;     // two-uniform closed-form tail path
  double tail_certificate = 0.0;
};

InversionPlan plan_inversion(const WeightedSumSpec& spec, double tol) {
  InversionPlan plan;
  bool has_gauss = spec.smoothing_sigma > 0.0;
  plan.gamma = 0.5 * spec.smoothing_sigma * spec.smoothing_sigma;
  for (std::size_t j = 0; j < spec.dists.size(); ++j) {
    const double a = spec.weights[j];
    if (a == 0.0) continue;
    const DistributionSpec& d = spec.dists[j];
    if (d.kind == DistKind::Uniform) {
      plan.betas.push_back(std::abs(a) * (d.b - d.a) * 0.5);
      plan.theta += a * 0.5 * (d.a + d.b);
    } else {
      has_gauss = true;
      plan.gamma += 0.5 * d.sigma * d.sigma * a * a;
      plan.theta += a * d.mean;
    }
  }
  const std::size_t m = plan.betas.size();
  if (!has_gauss && m < 2)
    throw ArgumentError(
        "weighted_sum_density: characteristic-function product is not "
        "integrable; a positive smoothing_sigma is required");

  if (plan.gamma > 0.0) {
    // Gaussian envelope: solve P(T) * exp(-gamma T^2) / (2 gamma T pi) <= tol.
    auto tail = [&](double T) {
      double poly = 1.0;
      for (double b : plan.betas) poly *= std::min(1.0, 1.0 / (b * T));
      return poly * std::exp(-plan.gamma * T * T) /
             (2.0 * plan.gamma * T * kPi);
    };
    double lo = 1.0, hi = 1.0;
    while (tail(hi) > tol && hi < 1e8) hi *= 2.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail(mid) > tol ? lo : hi) = mid;
    }
    plan.T = hi;
    plan.tail_certificate = tail(hi);
  } else if (m == 2) {
    plan.exact_tail = true;
    const double x0 =
        std::max(1.0 / plan.betas[0], 1.0 / plan.betas[1]);
    plan.T = std::max(60.0, 3.0 * x0);
    plan.tail_certificate = 3e-6;  // sine-integral approximation floor
  } else {
    // Pure polynomial envelope prod 1/(beta_j x), m >= 3 factors.
    double cp = 1.0, x0 = 0.0;
    for (double b : plan.betas) {
      cp /= b;
      x0 = std::max(x0, 1.0 / b);
    }
    const double md = static_cast<double>(m);
    double T = std::pow(cp / ((md - 1.0) * kPi * tol), 1.0 / (md - 1.0));
    plan.T = std::max({T, 2.0 * x0, 50.0});
    plan.tail_certificate =
        cp * std::pow(plan.T, 1.0 - md) / ((md - 1.0) * kPi);
  }
  return plan;
}

double phi_even(const InversionPlan& plan, double x) {
  double v = std::exp(-plan.gamma * x * x);
  for (double b : plan.betas) v *= sinc(b * x);
  return v;
}

// Closed-form integral of the two-uniform tail: at x > T the integrand is
// cos(u x) sin(b1 x) sin(b2 x) / (b1 b2 x^2), expanded into four cosines.
double two_uniform_tail(const InversionPlan& plan, double u) {
  const double b1 = plan.betas[0];
  const double b2 = plan.betas[1];
  const double delta = b1 - b2;
  const double sum = b1 + b2;
  const double T = plan.T;
  double acc = 0.0;
  acc += cos_over_x2_tail(std::abs(u - delta), T);
  acc += cos_over_x2_tail(std::abs(u + delta), T);
  acc -= cos_over_x2_tail(std::abs(u - sum), T);
  acc -= cos_over_x2_tail(std::abs(u + sum), T);
  return acc / (4.0 * b1 * b2 * kPi);
}

}  // namespace

DensityCurve weighted_sum_density(const WeightedSumSpec& spec,
                                  const std::vector<double>& eval_points) {
  spec.validate();
  if (eval_points.empty())
    throw ArgumentError("weighted_sum_density: empty evaluation grid");
  const double tol = default_tolerances().fourier_tail;
  const InversionPlan plan = plan_inversion(spec, tol);

  double beta_sum = 0.0;
  for (double b : plan.betas) beta_sum += b;
  double umax = 0.0;
  for (double s : eval_points)
    umax = std::max(umax, std::abs(plan.theta - s));
  const double h = std::min(0.02, 0.1 / (beta_sum + umax + 1.0));
  const std::int64_t segments =
      2 * (static_cast<std::int64_t>(plan.T / (2.0 * h)) + 1);
  const double step = plan.T / static_cast<double>(segments);

  // Simpson nodes of phi are shared across all evaluation points.
  std::vector<double> xs(segments + 1), phi(segments + 1), w(segments + 1);
  for (std::int64_t i = 0; i <= segments; ++i) {
    xs[i] = static_cast<double>(i) * step;
    phi[i] = phi_even(plan, xs[i]);
    w[i] = (i == 0 || i == segments) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
  }

  DensityCurve curve;
  curve.grid = eval_points;
  curve.truncation_window = plan.T;
  curve.values.reserve(eval_points.size());
  for (double s : eval_points) {
    const double u = plan.theta - s;
    double acc = 0.0;
    for (std::int64_t i = 0; i <= segments; ++i)
      acc += w[i] * phi[i] * std::cos(u * xs[i]);
    double f = acc * step / 3.0 / kPi;
    if (plan.exact_tail) f += two_uniform_tail(plan, u);
    curve.values.push_back(std::max(f, 0.0));
  }

  if (eval_points.size() >= 2) {
    curve.grid_step = eval_points[1] - eval_points[0];
    for (std::size_t i = 0; i + 1 < eval_points.size(); ++i) {
      curve.integral += 0.5 * (curve.values[i] + curve.values[i + 1]) *
                        (eval_points[i + 1] - eval_points[i]);
    }
  }
  return curve;
}

double weighted_sum_density_at(const WeightedSumSpec& spec, double s) {
  return weighted_sum_density(spec, {s}).values.front();
}

ProjectionDensityReport projection_density_sup(
    const std::vector<DistributionSpec>& dists, const RealSubspaceBasis& P,
    const ProjectionDensityOptions& options) {
  const int n = P.ambient();
  const int d = P.dim();
  if (static_cast<int>(dists.size()) != n)
    throw ArgumentError("projection_density_sup: dists/basis size mismatch");
  if (d > 2)
    throw ArgumentError("projection_density_sup: only d <= 2 is supported");
  P.validate();

  double K = 0.0;
  for (const auto& dist : dists) {
    const auto k = density_bound(dist);
    if (!k)
      throw ArgumentError(
          "projection_density_sup: requires continuous entry laws");
    K = std::max(K, *k);
  }

  ProjectionDensityReport report;
  report.dim = d;
  report.bound = std::pow(options.C * K, d);

  if (d == 1) {
    const Eigen::VectorXd a = P.Q.col(0);
    WeightedSumSpec spec;
    double center = 0.0, halfwidth = 1.0, gauss_spread = 0.0;
    int n_uniform = 0;
    bool has_gauss = false;
    for (int j = 0; j < n; ++j) {
      if (a(j) == 0.0) continue;
      spec.dists.push_back(dists[j]);
      spec.weights.push_back(a(j));
      center += a(j) * dists[j].mean_value();
      if (dists[j].kind == DistKind::Uniform) {
        ++n_uniform;
        halfwidth += std::abs(a(j)) * (dists[j].b - dists[j].a) * 0.5;
      } else {
        has_gauss = true;
        gauss_spread += a(j) * a(j) * dists[j].sigma * dists[j].sigma;
      }
    }
    // A lone uniform factor needs smoothing for integrability; at this width
    // the smoothed sup agrees with the exact one to far below the grid error.
    if (!has_gauss && n_uniform < 2) spec.smoothing_sigma = 1e-2;
    const double L = halfwidth + 6.0 * std::sqrt(gauss_spread) + 0.1;
    std::vector<double> grid;
    const int points = 2001;
    grid.reserve(points);
    for (int i = 0; i < points; ++i)
      grid.push_back(center - L + 2.0 * L * i / (points - 1));
    const DensityCurve curve = weighted_sum_density(spec, grid);
    report.sup = *std::max_element(curve.values.begin(), curve.values.end());
    report.stat_error = 0.0;
  } else {
    Rng rng = stream(Seed{options.seed, 0}, StreamDomain::MonteCarlo);
    const int N = options.mc_samples;
    Eigen::MatrixXd Y(N, 2);
    Eigen::VectorXd x(n);
    for (int s = 0; s < N; ++s) {
      for (int j = 0; j < n; ++j) x(j) = dists[j].sample(rng);
      Y.row(s) = (P.Q.transpose() * x).transpose();
    }
    const double h = options.bin_width;
    const double x0 = Y.col(0).minCoeff(), y0 = Y.col(1).minCoeff();
    const int bx = static_cast<int>((Y.col(0).maxCoeff() - x0) / h) + 1;
    const int by = static_cast<int>((Y.col(1).maxCoeff() - y0) / h) + 1;
    std::vector<int> counts(static_cast<std::size_t>(bx) * by, 0);
    for (int s = 0; s < N; ++s) {
      const int ix = std::min(bx - 1, static_cast<int>((Y(s, 0) - x0) / h));
      const int iy = std::min(by - 1, static_cast<int>((Y(s, 1) - y0) / h));
      ++counts[static_cast<std::size_t>(ix) * by + iy];
    }
    const int peak = *std::max_element(counts.begin(), counts.end());
    report.sup = peak / (static_cast<double>(N) * h * h);
    report.stat_error =
        3.0 * std::sqrt(static_cast<double>(peak)) / (N * h * h);
  }
  report.holds = report.sup <= report.bound + report.stat_error;
  return report;
}

// --- small ball of ||Gx|| -------------------------------------------------------

SmallBallGxReport small_ball_gx(int l, int m, const DistributionSpec& entry,
                                const Eigen::VectorXcd& x, double theta,
                                int trials, std::uint64_t master_seed,
                                double C0) {
  if (l < 1 || m < 1) throw ArgumentError("small_ball_gx: bad dimensions");
  if (x.size() != m)
    throw ArgumentError("small_ball_gx: vector length mismatch");
  if (trials < 100)
    throw ArgumentError("small_ball_gx: needs at least 100 trials");
  entry.validate();
  const auto K = density_bound(entry);
  if (!K)
    throw ArgumentError("small_ball_gx: entry law must have a bounded density");

  const double threshold = theta * std::sqrt(static_cast<double>(l));
  std::int64_t hits = 0, row_hits = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = stream(Seed{master_seed, static_cast<std::uint64_t>(t)},
                     StreamDomain::MonteCarlo);
    Eigen::MatrixXd G(l, m);
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < m; ++j) G(i, j) = entry.sample(rng);
    const Eigen::VectorXcd Gx = G * x;
    for (int i = 0; i < l; ++i)
      if (std::abs(Gx(i)) <= theta) ++row_hits;
    if (Gx.norm() <= threshold) ++hits;
  }

  SmallBallGxReport report;
  report.theta = theta;
  report.empirical = static_cast<double>(hits) / trials;
  report.bound = std::pow(C0 * theta, l);
  report.holds = report.empirical <= report.bound;
  report.row_empirical =
      static_cast<double>(row_hits) / (static_cast<double>(trials) * l);
  report.row_bound = C0 * (*K) * theta;
  report.row_holds = report.row_empirical <= report.row_bound;
  report.c0_min =
      (report.empirical > 0.0 && theta > 0.0)
          ? std::pow(report.empirical, 1.0 / l) / theta
          : 0.0;
  return report;
}

// --- tensorization audits --------------------------------------------------------

std::vector<TensorizationRow> tensorization_audit(
    TensorizationKind kind, const TensorizationParams& params,
    const std::vector<double>& t_grid, int samples, std::uint64_t seed,
    double M_guard) {
  if (samples < 1000)
    throw ArgumentError("tensorization_audit: needs at least 1000 samples");
  if (kind == TensorizationKind::Z1Z2) {
    if (params.d <= 1) throw ArgumentError("tensorization_audit: d must be > 1");
    if (params.M < M_guard)
      throw ArgumentError("tensorization_audit: M below the sufficiently-large guard");
  } else {
    if (params.l < 1) throw ArgumentError("tensorization_audit: l must be >= 1");
    if (!(params.C > 0.0))
      throw ArgumentError("tensorization_audit: C must be positive");
  }

  std::vector<TensorizationRow> rows;
  rows.reserve(t_grid.size());

  if (kind == TensorizationKind::Z1Z2) {
    const double d = params.d;
    const double M = params.M;
    // Z1 uniform on [0, 1/2]: P(Z1 <= t) = 2t. Z2 = sqrt(d-1) U^{1/(d-1)} / M:
    // P(Z2 <= t sqrt(d-1)) = (M t)^{d-1}.
    std::vector<double> z2(samples);
    Rng rng = stream(Seed{seed, 0}, StreamDomain::MonteCarlo);
    std::vector<double> z1(samples);
    for (int i = 0; i < samples; ++i) {
      z1[i] = 0.5 * rng.next_unit();
      z2[i] = std::sqrt(d - 1.0) * std::pow(rng.next_open(), 1.0 / (d - 1.0)) / M;
    }
    for (double t : t_grid) {
      const double cutoff = t * t * d;
      std::int64_t hits = 0;
      for (int i = 0; i < samples; ++i)
        if (z1[i] * z1[i] + z2[i] * z2[i] <= cutoff) ++hits;
      TensorizationRow row;
      row.t = t;
      row.empirical = static_cast<double>(hits) / samples;
      row.bound = std::pow(M * t, params.d);
      const double p = std::min(row.bound, 1.0);
      row.margin = 3.0 * std::sqrt(p * (1.0 - p) / samples) + 1.0 / samples;
      row.holds = row.empirical <= row.bound + row.margin;
      rows.push_back(row);
    }
  } else {
    const int l = params.l;
    const double C = params.C;
    Rng rng = stream(Seed{seed, 0}, StreamDomain::MonteCarlo);
    std::vector<double> sums(samples, 0.0);
    for (int i = 0; i < samples; ++i) {
      double acc = 0.0;
      for (int j = 0; j < l; ++j) {
        const double v = rng.next_unit() / C;  // P(V_j < t) = C t on [0, 1/C]
        acc += v * v;
      }
      sums[i] = acc;
    }
    // Laplace-transform constant from the proof: E exp(-V^2/t^2) <= C t sqrt(pi)/2.
    const double c_eff = std::exp(1.0) * std::sqrt(kPi) / 2.0 * C;
    for (double t : t_grid) {
      const double cutoff = t * t * l;
      std::int64_t hits = 0;
      for (int i = 0; i < samples; ++i)
        if (sums[i] < cutoff) ++hits;
      TensorizationRow row;
      row.t = t;
      row.empirical = static_cast<double>(hits) / samples;
      row.bound = std::pow(c_eff * t, l);
      const double p = std::min(row.bound, 1.0);
      row.margin = 3.0 * std::sqrt(p * (1.0 - p) / samples) + 1.0 / samples;
      row.holds = row.empirical <= row.bound + row.margin;
      rows.push_back(row);
    }
  }
  return rows;
}

// --- randomization of coordinates -------------------------------------------------

RandomizeAudit randomize_coordinates_audit(
    int N, const DistributionSpec& dist, const SubspaceBasis& E, double r,
    int trials, std::uint64_t seed,
    const std::optional<Eigen::VectorXd>& fixed_imag) {
  if (E.ambient() != N)
    throw ArgumentError("randomize_coordinates_audit: basis/N mismatch");
  E.validate();
  dist.validate();
  if (!dist.is_continuous())
    throw ArgumentError("randomize_coordinates_audit: law must be continuous");
  if (trials < 100)
    throw ArgumentError("randomize_coordinates_audit: needs >= 100 trials");
  Eigen::VectorXd Y = fixed_imag.value_or(Eigen::VectorXd::Zero(N));
  if (Y.size() != N)
    throw ArgumentError("randomize_coordinates_audit: fixed imaginary size");

  const int k = E.dim();
  const Eigen::VectorXcd Yc = Y.cast<std::complex<double>>() *
                              std::complex<double>(0.0, 1.0);

  // lhs: samples of P_E Z represented in E coordinates (norms preserved).
  Eigen::MatrixXd lhs_samples(trials, 2 * k);
  {
    Rng rng = stream(Seed{seed, 0}, StreamDomain::MonteCarlo, 0);
    Eigen::VectorXcd z(N);
    for (int t = 0; t < trials; ++t) {
      for (int j = 0; j < N; ++j)
        z(j) = std::complex<double>(dist.sample(rng), 0.0) + Yc(j);
      lhs_samples.row(t) =
          real_embedding(Eigen::VectorXcd(E.Q.adjoint() * z)).transpose();
    }
  }
  const double lhs = levy_concentration(lhs_samples, r);

  // rhs: two independent real copies stacked, projected onto Real(E).
  const RealSubspaceBasis realE = real_embedding_basis(E);
  Eigen::MatrixXd rhs_samples(trials, 2 * k);
  {
    Rng rng = stream(Seed{seed, 0}, StreamDomain::MonteCarlo, 1);
    Eigen::VectorXd zhat(2 * N);
    for (int t = 0; t < trials; ++t) {
      for (int j = 0; j < 2 * N; ++j) zhat(j) = dist.sample(rng);
      rhs_samples.row(t) = (realE.Q.transpose() * zhat).transpose();
    }
  }
  const double rhs_raw = levy_concentration(rhs_samples, 2.0 * r);

  RandomizeAudit audit;
  audit.lhs = lhs;
  audit.rhs = std::sqrt(rhs_raw);
  audit.margin = 5.0 / std::sqrt(static_cast<double>(trials));
  audit.holds = audit.lhs <= audit.rhs + audit.margin;
  return audit;
}

}  // namespace deloc
