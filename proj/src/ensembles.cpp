#include "deloc/ensembles.hpp"

#include "deloc/errors.hpp"

namespace deloc {

void EnsembleSpec::validate() const {
  if (n <= 0) throw SpecError("ensemble spec: n must be positive");
  entry.validate();
  if (fixed_imaginary) {
    if (fixed_imaginary->rows() != n || fixed_imaginary->cols() != n)
      throw SpecError("ensemble spec: fixed_imaginary must be n x n");
  }
}

Eigen::MatrixXd sample_real(const EnsembleSpec& spec, const Seed& seed) {
  spec.validate();
  const int n = spec.n;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rng rng = pair_stream(seed, StreamDomain::MatrixPair, i, j);
      const double v = spec.entry.sample(rng);
      switch (spec.symmetry) {
        case Symmetry::IID:
          A(i, j) = v;
          if (i != j) A(j, i) = spec.entry.sample(rng);
          break;
        case Symmetry::Symmetric:
          A(i, j) = v;
          A(j, i) = v;
          break;
        case Symmetry::SkewSymmetric:
          if (i == j) {
            A(i, i) = 0.0;  // A = -A^T forces a zero diagonal
          } else {
            A(i, j) = v;
            A(j, i) = -v;
          }
          break;
      }
    }
  }
  return A;
}

Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, const Seed& seed) {
  const Eigen::MatrixXd re = sample_real(spec, seed);
  Eigen::MatrixXcd A = re.cast<std::complex<double>>();
  if (spec.fixed_imaginary) {
    A.imag() = *spec.fixed_imaginary;
  }
  return A;
}

Eigen::MatrixXd make_fixed_imaginary(const EnsembleSpec& spec,
                                     std::uint64_t imag_seed) {
  spec.validate();
  const int n = spec.n;
  Eigen::MatrixXd T(n, n);
  const Seed s{imag_seed, 0};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rng rng = pair_stream(s, StreamDomain::Imaginary, i, j);
      const double v = spec.entry.sample(rng);
      switch (spec.symmetry) {
        case Symmetry::IID:
          T(i, j) = v;
          if (i != j) T(j, i) = spec.entry.sample(rng);
          break;
        case Symmetry::Symmetric:
          T(i, j) = v;
          T(j, i) = v;
          break;
        case Symmetry::SkewSymmetric:
          if (i == j) {
            T(i, i) = 0.0;
          } else {
            T(i, j) = v;
            T(j, i) = -v;
          }
          break;
      }
    }
  }
  return T;
}

Eigen::MatrixXd shift_matrix(const Eigen::MatrixXd& A, double mu) {
  if (mu == 0.0) return A;
  return A.array() - mu;
}

Eigen::MatrixXcd shift_matrix(const Eigen::MatrixXcd& A, double mu) {
  if (mu == 0.0) return A;
  return A.array() - std::complex<double>(mu, 0.0);
}

}  // namespace deloc
