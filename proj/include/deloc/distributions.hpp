#pragma once

#include <complex>
#include <optional>
#include <string>

#include "deloc/seed.hpp"

namespace deloc {

enum class DistKind { Uniform, Gaussian, BernoulliSym, Bernoulli, PointMass };

//! Scalar entry law. Continuous kinds carry an exact essential-sup density
//! bound; discrete kinds do not.
struct DistributionSpec {
  DistKind kind = DistKind::Gaussian;
  double a = 0.0, b = 0.0;      // uniform on [a, b]
  double mean = 0.0, sigma = 1.0;  // gaussian
  double p = 0.5;               // bernoulli, values {0, 1}
  double c = 0.0;               // point mass

  static DistributionSpec uniform(double a, double b);
  static DistributionSpec gaussian(double mean, double sigma);
  static DistributionSpec bernoulli_sym();
  static DistributionSpec bernoulli(double p);
  static DistributionSpec point_mass(double c);

  //! Throws SpecError naming the offending field.
  void validate() const;

  bool is_continuous() const {
    return kind == DistKind::Uniform || kind == DistKind::Gaussian;
  }

  double sample(Rng& rng) const;

  // Exact moments of the law (test and audit support).
  double mean_value() const;
  double variance() const;
  double cdf(double x) const;

  std::string describe() const;
};

//! Exact essential sup of the density: 1/(b-a) for uniform,
//! 1/(sigma*sqrt(2*pi)) for gaussian; absent for discrete kinds.
std::optional<double> density_bound(const DistributionSpec& d);

//! Closed-form characteristic function E e^{ixX}. |result| <= 1, result(0) = 1.
std::complex<double> char_fn(const DistributionSpec& d, double x);

}  // namespace deloc
