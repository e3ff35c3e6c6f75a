#include "deloc/distributions.hpp"

#include <cmath>

#include "deloc/errors.hpp"

namespace deloc {

namespace {
constexpr double kPi = 3.14159265358979323846;

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}
}  // namespace

DistributionSpec DistributionSpec::uniform(double a, double b) {
  DistributionSpec d;
  d.kind = DistKind::Uniform;
  d.a = a;
  d.b = b;
  return d;
}

DistributionSpec DistributionSpec::gaussian(double mean, double sigma) {
  DistributionSpec d;
  d.kind = DistKind::Gaussian;
  d.mean = mean;
  d.sigma = sigma;
  return d;
}

DistributionSpec DistributionSpec::bernoulli_sym() {
  DistributionSpec d;
  d.kind = DistKind::BernoulliSym;
  return d;
}

DistributionSpec DistributionSpec::bernoulli(double p) {
  DistributionSpec d;
  d.kind = DistKind::Bernoulli;
  d.p = p;
  return d;
}

DistributionSpec DistributionSpec::point_mass(double c) {
  DistributionSpec d;
  d.kind = DistKind::PointMass;
  d.c = c;
  return d;
}

void DistributionSpec::validate() const {
  switch (kind) {
    case DistKind::Uniform:
      if (!(a < b)) throw SpecError("uniform entry law: requires a < b");
      break;
    case DistKind::Gaussian:
      if (!(sigma > 0.0)) throw SpecError("gaussian entry law: requires sigma > 0");
      break;
    case DistKind::Bernoulli:
      if (!(p > 0.0 && p < 1.0))
        throw SpecError("bernoulli entry law: requires p in (0, 1)");
      break;
    case DistKind::BernoulliSym:
    case DistKind::PointMass:
      break;
  }
}

double DistributionSpec::sample(Rng& rng) const {
  switch (kind) {
    case DistKind::Uniform:
      return a + (b - a) * rng.next_unit();
    case DistKind::Gaussian:
      return mean + sigma * rng.next_normal();
    case DistKind::BernoulliSym:
      return (rng.next_u64() >> 63) ? 1.0 : -1.0;
    case DistKind::Bernoulli:
      return rng.next_unit() < p ? 1.0 : 0.0;
    case DistKind::PointMass:
      return c;
  }
  return 0.0;
}

double DistributionSpec::mean_value() const {
  switch (kind) {
    case DistKind::Uniform: return 0.5 * (a + b);
    case DistKind::Gaussian: return mean;
    case DistKind::BernoulliSym: return 0.0;
    case DistKind::Bernoulli: return p;
    case DistKind::PointMass: return c;
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (kind) {
    case DistKind::Uniform: return (b - a) * (b - a) / 12.0;
    case DistKind::Gaussian: return sigma * sigma;
    case DistKind::BernoulliSym: return 1.0;
    case DistKind::Bernoulli: return p * (1.0 - p);
    case DistKind::PointMass: return 0.0;
  }
  return 0.0;
}

double DistributionSpec::cdf(double x) const {
  switch (kind) {
    case DistKind::Uniform:
      if (x <= a) return 0.0;
      if (x >= b) return 1.0;
      return (x - a) / (b - a);
    case DistKind::Gaussian:
      return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0)));
    case DistKind::BernoulliSym:
      if (x < -1.0) return 0.0;
      if (x < 1.0) return 0.5;
      return 1.0;
    case DistKind::Bernoulli:
      if (x < 0.0) return 0.0;
      if (x < 1.0) return 1.0 - p;
      return 1.0;
    case DistKind::PointMass:
      return x >= c ? 1.0 : 0.0;
  }
  return 0.0;
}

std::string DistributionSpec::describe() const {
  switch (kind) {
    case DistKind::Uniform:
      return "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case DistKind::Gaussian:
      return "gaussian(" + std::to_string(mean) + "," + std::to_string(sigma) + ")";
    case DistKind::BernoulliSym: return "bernoulli_sym";
    case DistKind::Bernoulli: return "bernoulli(" + std::to_string(p) + ")";
    case DistKind::PointMass: return "point_mass(" + std::to_string(c) + ")";
  }
  return "?";
}

std::optional<double> density_bound(const DistributionSpec& d) {
  switch (d.kind) {
    case DistKind::Uniform: return 1.0 / (d.b - d.a);
    case DistKind::Gaussian: return 1.0 / (d.sigma * std::sqrt(2.0 * kPi));
    default: return std::nullopt;
  }
}

std::complex<double> char_fn(const DistributionSpec& d, double x) {
  using namespace std::complex_literals;
  switch (d.kind) {
    case DistKind::Uniform:
      return std::exp(1i * (x * 0.5 * (d.a + d.b))) * sinc(x * 0.5 * (d.b - d.a));
    case DistKind::Gaussian:
      return std::exp(1i * (x * d.mean)) *
             std::exp(-0.5 * d.sigma * d.sigma * x * x);
    case DistKind::BernoulliSym:
      return {std::cos(x), 0.0};
    case DistKind::Bernoulli:
      return (1.0 - d.p) + d.p * std::exp(1i * x);
    case DistKind::PointMass:
      return std::exp(1i * (x * d.c));
  }
  return {1.0, 0.0};
}

}  // namespace deloc
