#pragma once

#include <Eigen/Dense>
#include <optional>

#include "deloc/distributions.hpp"
#include "deloc/seed.hpp"

namespace deloc {

enum class Symmetry { IID, Symmetric, SkewSymmetric };

//! Matrix ensemble: dimension, symmetry class, entry law, optional all-ones
//! shift and optional frozen imaginary part. The sampled real part is random;
//! fixed_imaginary, when present, is held constant across trials.
struct EnsembleSpec {
  int n = 0;
  Symmetry symmetry = Symmetry::IID;
  DistributionSpec entry;
  double shift_mu = 0.0;
  std::optional<Eigen::MatrixXd> fixed_imaginary;

  void validate() const;  // throws SpecError naming the field
};

//! Samples the random real part. Entries on and above the diagonal are
//! independent draws from the entry law; each A_ij depends only on the
//! substream of the unordered pair {i, j}, so the symmetry class holds
//! bitwise: A_ji = A_ij (symmetric), A_ji = -A_ij with zero diagonal
//! (skew-symmetric). For the iid class the pair substream supplies A_ij and
//! A_ji as consecutive independent draws.
Eigen::MatrixXd sample_real(const EnsembleSpec& spec, const Seed& seed);

//! Full sample: sampled real part plus i * fixed_imaginary. The result is
//! genuinely complex iff fixed_imaginary is present; otherwise the imaginary
//! part is zero. shift_mu is *not* applied here (see shift_matrix).
Eigen::MatrixXcd sample_matrix(const EnsembleSpec& spec, const Seed& seed);

//! Generates an imaginary part once from its own seed, to be frozen into an
//! EnsembleSpec. Respects the spec's symmetry class.
Eigen::MatrixXd make_fixed_imaginary(const EnsembleSpec& spec,
                                     std::uint64_t imag_seed);

//! A - mu * J with J the all-ones matrix.
Eigen::MatrixXd shift_matrix(const Eigen::MatrixXd& A, double mu);
Eigen::MatrixXcd shift_matrix(const Eigen::MatrixXcd& A, double mu);

}  // namespace deloc
