#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deloc/ensembles.hpp"
#include "deloc/errors.hpp"
#include "deloc/linalg.hpp"
#include "oracles.hpp"

using namespace deloc;

TEST_CASE("distribution spec validation names the offending field") {
  CHECK_THROWS_WITH_AS(DistributionSpec::uniform(2.0, 1.0).validate(),
                       doctest::Contains("uniform"), SpecError);
  CHECK_THROWS_WITH_AS(DistributionSpec::gaussian(0.0, 0.0).validate(),
                       doctest::Contains("sigma"), SpecError);
  CHECK_THROWS_AS(DistributionSpec::bernoulli(1.0).validate(), SpecError);
  CHECK_NOTHROW(DistributionSpec::bernoulli_sym().validate());
  CHECK_NOTHROW(DistributionSpec::point_mass(3.0).validate());
}

TEST_CASE("density bounds are the exact essential sups") {
  CHECK(*density_bound(DistributionSpec::uniform(-0.5, 0.5)) == doctest::Approx(1.0));
  CHECK(*density_bound(DistributionSpec::gaussian(0.0, 1.0)) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-12));
  CHECK(!density_bound(DistributionSpec::bernoulli_sym()).has_value());
  CHECK(!density_bound(DistributionSpec::bernoulli(0.3)).has_value());
  CHECK(!density_bound(DistributionSpec::point_mass(1.0)).has_value());
}

TEST_CASE("symmetric bernoulli_sym sample is exactly symmetric with +-1 entries") {
  EnsembleSpec spec{3, Symmetry::Symmetric, DistributionSpec::bernoulli_sym()};
  const Eigen::MatrixXd A = sample_real(spec, Seed{42, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(A(i, j) == A(j, i));  // bitwise
      CHECK(std::abs(A(i, j)) == 1.0);
    }
}

TEST_CASE("sampling is a pure function of (spec, seed)") {
  EnsembleSpec spec{20, Symmetry::IID, DistributionSpec::gaussian(0.0, 1.0)};
  const Eigen::MatrixXd A = sample_real(spec, Seed{7, 3});
  const Eigen::MatrixXd B = sample_real(spec, Seed{7, 3});
  CHECK(A == B);
  const Eigen::MatrixXd C = sample_real(spec, Seed{7, 4});
  CHECK(A != C);
}

TEST_CASE("entries depend only on their unordered pair substream") {
  // Growing n must not disturb the overlapping block.
  EnsembleSpec small{5, Symmetry::IID, DistributionSpec::uniform(-1.0, 1.0)};
  EnsembleSpec large = small;
  large.n = 9;
  const Eigen::MatrixXd A = sample_real(small, Seed{11, 2});
  const Eigen::MatrixXd B = sample_real(large, Seed{11, 2});
  CHECK(A == B.topLeftCorner(5, 5));
}

TEST_CASE("skew-symmetric class holds exactly with zero diagonal") {
  EnsembleSpec spec{6, Symmetry::SkewSymmetric,
                    DistributionSpec::gaussian(0.0, 1.0)};
  const Eigen::MatrixXd A = sample_real(spec, Seed{5, 0});
  CHECK(A == (-A.transpose()).eval());
  CHECK(A.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("iid gaussian entry statistics match the law at n = 200") {
  EnsembleSpec spec{200, Symmetry::IID, DistributionSpec::gaussian(0.0, 1.0)};
  const Eigen::MatrixXd A = sample_real(spec, Seed{2024, 0});
  const double mean = A.mean();
  const double var = (A.array() - mean).square().sum() / (A.size() - 1);
  CHECK(std::abs(mean) < 0.02);       // 4 sigma at 200^2 entries
  CHECK(std::abs(var - 1.0) < 0.03);
}

TEST_CASE("entry-law marginals pass a KS check at 1e4 samples") {
  for (const auto& d : {DistributionSpec::uniform(-0.5, 0.5),
                        DistributionSpec::uniform(-2.0, 3.0),
                        DistributionSpec::gaussian(0.0, 1.0),
                        DistributionSpec::gaussian(1.5, 0.3)}) {
    Rng rng = stream(Seed{77, 0}, StreamDomain::MonteCarlo);
    std::vector<double> samples(10000);
    for (double& s : samples) s = d.sample(rng);
    const double ks =
        oracles::ks_statistic(samples, [&](double x) { return d.cdf(x); });
    CAPTURE(d.describe());
    CHECK(ks < 0.02);
  }
}

TEST_CASE("shift_matrix basics") {
  const Eigen::MatrixXd J = Eigen::MatrixXd::Ones(4, 4);
  CHECK(shift_matrix(J, 1.0).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::MatrixXd A = Eigen::MatrixXd::Random(5, 5);
  CHECK(shift_matrix(A, 0.0) == A);
}

TEST_CASE("shift roundtrip is exact on integer entries") {
  EnsembleSpec spec{15, Symmetry::Symmetric, DistributionSpec::bernoulli_sym()};
  const Eigen::MatrixXd A = sample_real(spec, Seed{9, 1});
  CHECK(shift_matrix(shift_matrix(A, 1.0), -1.0) == A);
}

TEST_CASE("centered bernoulli(1/2) matrices have norm about sqrt(n)") {
  // Monte Carlo: ||A - 1/2 J|| <= 1.5 sqrt(n) in at least 95 of 100 trials.
  EnsembleSpec spec{200, Symmetry::IID, DistributionSpec::bernoulli(0.5)};
  const double cutoff = 1.5 * std::sqrt(200.0);
  int ok = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd A =
        shift_matrix(sample_real(spec, Seed{31, (std::uint64_t)t}), 0.5);
    if (operator_norm(A) <= cutoff) ++ok;
  }
  CHECK(ok >= 95);
}

TEST_CASE("complex output appears exactly when fixed_imaginary is present") {
  EnsembleSpec spec{8, Symmetry::Symmetric, DistributionSpec::gaussian(0.0, 1.0)};
  const Eigen::MatrixXcd A0 = sample_matrix(spec, Seed{1, 0});
  CHECK(A0.imag().cwiseAbs().maxCoeff() == 0.0);

  spec.fixed_imaginary = make_fixed_imaginary(spec, 999);
  const Eigen::MatrixXcd A1 = sample_matrix(spec, Seed{1, 0});
  const Eigen::MatrixXcd A2 = sample_matrix(spec, Seed{1, 5});
  CHECK(A1.imag() == *spec.fixed_imaginary);  // frozen across trials
  CHECK(A2.imag() == *spec.fixed_imaginary);
  CHECK(A1.real() != A2.real());
}

TEST_CASE("invalid ensemble spec is rejected with the field name") {
  EnsembleSpec spec{0, Symmetry::IID, DistributionSpec::gaussian(0.0, 1.0)};
  CHECK_THROWS_WITH_AS(sample_real(spec, Seed{}), doctest::Contains("n"),
                       SpecError);
  EnsembleSpec bad{4, Symmetry::IID, DistributionSpec::uniform(1.0, 1.0)};
  CHECK_THROWS_AS(sample_real(bad, Seed{}), SpecError);
  EnsembleSpec wrong_imag{4, Symmetry::IID, DistributionSpec::gaussian(0.0, 1.0)};
  wrong_imag.fixed_imaginary = Eigen::MatrixXd::Zero(3, 3);
  CHECK_THROWS_WITH_AS(sample_real(wrong_imag, Seed{}),
                       doctest::Contains("fixed_imaginary"), SpecError);
}
