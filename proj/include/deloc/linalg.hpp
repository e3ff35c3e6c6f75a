#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "deloc/constants.hpp"

namespace deloc {

//! Eigenvalue/eigenvector bundle for one matrix sample. Eigenvalues are
//! sorted by real part then imaginary part, descending. Each eigenvector is
//! unit-norm with its largest-magnitude coordinate rotated to be positive
//! real; residuals[k] = ||A v_k - lambda_k v_k||_2.
struct SpectralData {
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd eigenvectors;  // columns, aligned with eigenvalues
  Eigen::VectorXd residuals;
  bool symmetric_input = false;

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

//! Orthonormal basis of a subspace E of R^n or C^n (columns of Q).
template <typename Scalar>
struct SubspaceBasisT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> Q;

  int ambient() const { return static_cast<int>(Q.rows()); }
  int dim() const { return static_cast<int>(Q.cols()); }
  //! Throws ArgumentError unless columns are orthonormal to the tolerance.
  void validate(double tol = default_tolerances().orthogonality) const;
};
using SubspaceBasis = SubspaceBasisT<std::complex<double>>;
using RealSubspaceBasis = SubspaceBasisT<double>;

// --- singular values -------------------------------------------------------

//! Nonincreasing singular values of an l x m matrix (all min(l, m) of them).
std::vector<double> singular_values(const Eigen::MatrixXd& M);
std::vector<double> singular_values(const Eigen::MatrixXcd& M);

double smin(const Eigen::MatrixXd& M);
double smin(const Eigen::MatrixXcd& M);
double operator_norm(const Eigen::MatrixXd& M);
double operator_norm(const Eigen::MatrixXcd& M);

//! Smallest singular value of the columns of A - lambda*I outside the index
//! set I. Requires 0 < |I| < n; indices are 0-based.
double smin_submatrix(const Eigen::MatrixXcd& A, std::complex<double> lambda,
                      const std::vector<int>& I);
double smin_submatrix(const Eigen::MatrixXd& A, std::complex<double> lambda,
                      const std::vector<int>& I);

struct BoundednessReport {
  bool holds = false;
  double norm = 0.0;
};

//! Event ||A|| <= M*sqrt(n), evaluated exactly via the largest singular value.
BoundednessReport boundedness_event(const Eigen::MatrixXd& A, double M);
BoundednessReport boundedness_event(const Eigen::MatrixXcd& A, double M);

// --- distances and the negative second moment ------------------------------

//! ||x - P_H x||_2 for H = span(S). Empty S returns ||x||_2.
double distance_to_span(const Eigen::VectorXd& x,
                        const std::vector<Eigen::VectorXd>& S);
double distance_to_span(const Eigen::VectorXcd& x,
                        const std::vector<Eigen::VectorXcd>& S);

struct SecondMomentAudit {
  double lhs = 0.0;  // sum of s_j(B)^{-2}
  double rhs = 0.0;  // sum of dist(B_j, span of other columns)^{-2}
};

//! Audits sum_j s_j(B)^{-2} = sum_j dist(B_j, H_j)^{-2} on a full-column-rank
//! k x m matrix, k >= m. The two sides are computed independently (SVD vs
//! column least squares). Throws DegeneracyError when s_min <= 1e-10.
SecondMomentAudit negative_second_moment_audit(const Eigen::MatrixXd& B);
SecondMomentAudit negative_second_moment_audit(const Eigen::MatrixXcd& B);

// --- block decomposition bound ---------------------------------------------

struct DecompositionAudit {
  double s_A = 0.0;      // smallest singular value of the full matrix
  double s_B = 0.0;      // smallest retained singular value of the top block
  double s_G = 0.0;      // restricted smin of the bottom block on E^-
  double norm_A = 0.0;   // ||A||
  double bound = 0.0;    // s_B * s_G / (4 ||A||)
  bool holds = false;    // s_A >= bound
  bool degenerate = false;  // E^- (or E^+) trivial; bound convention applies
  int dim_E_minus = 0;
};

//! Splits A (m x n) into B = rows [0, m1) and G = the rest, splits C^n into
//! E^+ (right singular vectors of B with s_i > threshold) and its orthogonal
//! complement E^-, and checks s_A >= s_B * s_G / (4 ||A||). With E^- trivial
//! the audit degenerates to s_A >= s_B (s_G reported as +inf).
DecompositionAudit decomposition_bound_audit(const Eigen::MatrixXd& A, int m1,
                                             double threshold);
DecompositionAudit decomposition_bound_audit(const Eigen::MatrixXcd& A, int m1,
                                             double threshold);

//! inf over unit x in E of ||Gx||_2, i.e. the smallest singular value of
//! G * Q_E. Throws ArgumentError on ambient dimension mismatch.
double restricted_smin(const Eigen::MatrixXd& G, const RealSubspaceBasis& E);
double restricted_smin(const Eigen::MatrixXcd& G, const SubspaceBasis& E);

// --- nets and embeddings ----------------------------------------------------

//! Deterministic eps-net of the unit sphere S^{k-1}: greedy farthest-point
//! insertion over a fixed random pool, stopping when no pool point is farther
//! than eps. Net points are pairwise more than eps apart, which gives the
//! (1 + 2/eps)^k cardinality bound; covering is validated probabilistically
//! in the test suite. Guard: 1 <= k <= 12.
std::vector<Eigen::VectorXd> epsilon_net(int k, double eps);

//! Real(z) = [Re z; Im z]; preserves the Euclidean norm exactly.
Eigen::VectorXd real_embedding(const Eigen::VectorXcd& z);

//! Real matrix of a complex one: [[R, -T], [T, R]], compatible with
//! real_embedding: RealMat(B) * Real(z) = Real(B z).
Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& B);

//! Real(E) for a complex subspace basis: the 2k real columns
//! [Real(q_j), Real(i q_j)], orthonormal when Q is.
RealSubspaceBasis real_embedding_basis(const SubspaceBasis& E);

// --- eigenpairs --------------------------------------------------------------

//! Dense eigendecomposition with the SpectralData contracts. With
//! symmetric_hint the self-adjoint path is used (all-real output); otherwise
//! the general complex path. Throws NumericalError on non-convergence.
SpectralData eigenpairs(const Eigen::MatrixXd& A, bool symmetric_hint);
SpectralData eigenpairs(const Eigen::MatrixXcd& A);

}  // namespace deloc
