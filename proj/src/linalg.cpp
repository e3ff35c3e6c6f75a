#include "deloc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "deloc/errors.hpp"
#include "deloc/seed.hpp"

namespace deloc {

namespace {

template <typename Mat>
Eigen::VectorXd sv_of(const Mat& M) {
  // Jacobi is the accuracy workhorse at audit sizes; BDC takes over for the
  // larger survey matrices.
  if (std::min(M.rows(), M.cols()) <= 32) {
    Eigen::JacobiSVD<Mat> svd(M);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Mat> svd(M);
  return svd.singularValues();
}

template <typename Mat>
std::vector<double> singular_values_impl(const Mat& M) {
  const Eigen::VectorXd s = sv_of(M);
  return std::vector<double>(s.data(), s.data() + s.size());
}

template <typename Mat>
double smin_impl(const Mat& M) {
  const Eigen::VectorXd s = sv_of(M);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

// inf over unit x of ||Mx||: zero whenever the domain outsizes the range.
template <typename Mat>
double inf_smin_impl(const Mat& M) {
  if (M.cols() > M.rows()) return 0.0;
  return smin_impl(M);
}

template <typename Mat>
double opnorm_impl(const Mat& M) {
  const Eigen::VectorXd s = sv_of(M);
  return s.size() == 0 ? 0.0 : s(0);
}

std::vector<int> checked_index_set(const std::vector<int>& I, int n) {
  if (I.empty()) throw ArgumentError("smin_submatrix: index set I is empty");
  std::vector<int> sorted = I;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= n)
    throw ArgumentError("smin_submatrix: index out of range");
  if (static_cast<int>(sorted.size()) >= n)
    throw ArgumentError("smin_submatrix: I must be a proper subset of [n]");
  return sorted;
}

template <typename Scalar>
double smin_submatrix_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
    std::complex<double> lambda, const std::vector<int>& I) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw ArgumentError("smin_submatrix: matrix not square");
  const std::vector<int> drop = checked_index_set(I, n);
  Eigen::MatrixXcd S = A.template cast<std::complex<double>>();
  S.diagonal().array() -= lambda;
  Eigen::MatrixXcd cols(n, n - static_cast<int>(drop.size()));
  int out = 0;
  std::size_t d = 0;
  for (int j = 0; j < n; ++j) {
    if (d < drop.size() && drop[d] == j) {
      ++d;
      continue;
    }
    cols.col(out++) = S.col(j);
  }
  return smin_impl(cols);
}

template <typename Mat>
BoundednessReport boundedness_impl(const Mat& A, double M) {
  if (A.rows() != A.cols())
    throw ArgumentError("boundedness_event: matrix not square");
  BoundednessReport r;
  r.norm = opnorm_impl(A);
  r.holds = r.norm <= M * std::sqrt(static_cast<double>(A.rows()));
  return r;
}

template <typename Scalar>
double distance_to_span_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
    const std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& S) {
  if (S.empty()) return x.norm();
  const int n = static_cast<int>(x.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> H(n, S.size());
  for (std::size_t j = 0; j < S.size(); ++j) {
    if (S[j].size() != n)
      throw ArgumentError("distance_to_span: ambient dimension mismatch");
    H.col(static_cast<int>(j)) = S[j];
  }
  // Least-squares residual; COD handles rank-deficient spans.
  Eigen::CompleteOrthogonalDecomposition<
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>
      cod(H);
  const auto coeffs = cod.solve(x);
  return (x - H * coeffs).norm();
}

template <typename Scalar>
SecondMomentAudit negative_second_moment_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& B) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int m = static_cast<int>(B.cols());
  if (B.rows() < m)
    throw ArgumentError("negative_second_moment_audit: needs rows >= cols");
  const Eigen::VectorXd s = sv_of(B);
  if (s(s.size() - 1) <= 1e-10)
    throw DegeneracyError(
        "negative_second_moment_audit: matrix numerically rank-deficient");
  SecondMomentAudit audit;
  for (int j = 0; j < m; ++j) audit.lhs += 1.0 / (s(j) * s(j));
  for (int j = 0; j < m; ++j) {
    std::vector<Vec> others;
    others.reserve(m - 1);
    for (int l = 0; l < m; ++l)
      if (l != j) others.push_back(B.col(l));
    const double d = distance_to_span_impl<Scalar>(B.col(j), others);
    audit.rhs += 1.0 / (d * d);
  }
  return audit;
}

template <typename Scalar>
double restricted_smin_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& G,
    const SubspaceBasisT<Scalar>& E) {
  if (G.cols() != E.ambient())
    throw ArgumentError("restricted_smin: ambient dimension mismatch");
  E.validate();
  return inf_smin_impl((G * E.Q).eval());
}

template <typename Scalar>
DecompositionAudit decomposition_bound_impl(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A, int m1,
    double threshold) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m1 < 1 || m1 >= m)
    throw ArgumentError("decomposition_bound_audit: m1 out of range");
  if (!(threshold > 0.0))
    throw ArgumentError("decomposition_bound_audit: threshold must be positive");

  const Mat B = A.topRows(m1);
  const Mat G = A.bottomRows(m - m1);

  Eigen::JacobiSVD<Mat> svd(B, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  const Mat V = svd.matrixV();  // n x n

  DecompositionAudit audit;
  audit.norm_A = opnorm_impl(A);
  audit.s_A = smin_impl(A);

  std::vector<int> plus, minus;
  for (int i = 0; i < n; ++i) {
    const double si = i < s.size() ? s(i) : 0.0;
    (si > threshold ? plus : minus).push_back(i);
  }
  audit.dim_E_minus = static_cast<int>(minus.size());

  const double slack = 1e-10 * (1.0 + audit.norm_A);

  if (plus.empty()) {
    // Nothing retained by the top block; the bound is vacuous.
    audit.degenerate = true;
    audit.s_B = std::numeric_limits<double>::infinity();
    audit.s_G = minus.empty() ? std::numeric_limits<double>::infinity()
                              : 0.0;
    audit.bound = 0.0;
    audit.holds = true;
    return audit;
  }

  double sB = std::numeric_limits<double>::infinity();
  for (int i : plus) sB = std::min(sB, s(i));
  audit.s_B = sB;

  if (minus.empty()) {
    audit.degenerate = true;
    audit.s_G = std::numeric_limits<double>::infinity();
    audit.bound = sB;
    audit.holds = audit.s_A >= audit.bound - slack;
    return audit;
  }

  Mat Qminus(n, static_cast<int>(minus.size()));
  for (std::size_t c = 0; c < minus.size(); ++c)
    Qminus.col(static_cast<int>(c)) = V.col(minus[c]);
  audit.s_G = inf_smin_impl((G * Qminus).eval());
  audit.bound = audit.s_B * audit.s_G / (4.0 * audit.norm_A);
  audit.holds = audit.s_A >= audit.bound - slack;
  return audit;
}

}  // namespace

template <typename Scalar>
void SubspaceBasisT<Scalar>::validate(double tol) const {
  if (Q.cols() < 1 || Q.cols() > Q.rows())
    throw ArgumentError("subspace basis: needs 1 <= dim <= ambient");
  const auto gram =
      (Q.adjoint() * Q -
       Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(
           Q.cols(), Q.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (gram > tol)
    throw ArgumentError("subspace basis: columns not orthonormal");
}
template struct SubspaceBasisT<double>;
template struct SubspaceBasisT<std::complex<double>>;

std::vector<double> singular_values(const Eigen::MatrixXd& M) {
  return singular_values_impl(M);
}
std::vector<double> singular_values(const Eigen::MatrixXcd& M) {
  return singular_values_impl(M);
}
double smin(const Eigen::MatrixXd& M) { return smin_impl(M); }
double smin(const Eigen::MatrixXcd& M) { return smin_impl(M); }
double operator_norm(const Eigen::MatrixXd& M) { return opnorm_impl(M); }
double operator_norm(const Eigen::MatrixXcd& M) { return opnorm_impl(M); }

double smin_submatrix(const Eigen::MatrixXcd& A, std::complex<double> lambda,
                      const std::vector<int>& I) {
  return smin_submatrix_impl<std::complex<double>>(A, lambda, I);
}
double smin_submatrix(const Eigen::MatrixXd& A, std::complex<double> lambda,
                      const std::vector<int>& I) {
  return smin_submatrix_impl<double>(A, lambda, I);
}

BoundednessReport boundedness_event(const Eigen::MatrixXd& A, double M) {
  return boundedness_impl(A, M);
}
BoundednessReport boundedness_event(const Eigen::MatrixXcd& A, double M) {
  return boundedness_impl(A, M);
}

double distance_to_span(const Eigen::VectorXd& x,
                        const std::vector<Eigen::VectorXd>& S) {
  return distance_to_span_impl<double>(x, S);
}
double distance_to_span(const Eigen::VectorXcd& x,
                        const std::vector<Eigen::VectorXcd>& S) {
  return distance_to_span_impl<std::complex<double>>(x, S);
}

SecondMomentAudit negative_second_moment_audit(const Eigen::MatrixXd& B) {
  return negative_second_moment_impl<double>(B);
}
SecondMomentAudit negative_second_moment_audit(const Eigen::MatrixXcd& B) {
  return negative_second_moment_impl<std::complex<double>>(B);
}

DecompositionAudit decomposition_bound_audit(const Eigen::MatrixXd& A, int m1,
                                             double threshold) {
  return decomposition_bound_impl<double>(A, m1, threshold);
}
DecompositionAudit decomposition_bound_audit(const Eigen::MatrixXcd& A, int m1,
                                             double threshold) {
  return decomposition_bound_impl<std::complex<double>>(A, m1, threshold);
}

double restricted_smin(const Eigen::MatrixXd& G, const RealSubspaceBasis& E) {
  return restricted_smin_impl<double>(G, E);
}
double restricted_smin(const Eigen::MatrixXcd& G, const SubspaceBasis& E) {
  return restricted_smin_impl<std::complex<double>>(G, E);
}

std::vector<Eigen::VectorXd> epsilon_net(int k, double eps) {
  if (k < 1 || k > default_constants().epsnet_k_guard)
    throw ArgumentError("epsilon_net: k outside the [1, 12] guard");
  if (!(eps > 0.0 && eps <= 1.0))
    throw ArgumentError("epsilon_net: eps must lie in (0, 1]");

  // Fixed pool seed: the net is a pure function of (k, eps).
  Rng rng = stream(Seed{0x6e657470ULL, 0}, StreamDomain::NetPool,
                   static_cast<std::uint64_t>(k));
  const int pool_size =
      std::min(120000, 1500 * (1 << std::min(k, 6)));
  Eigen::MatrixXd pool(k, pool_size);
  for (int c = 0; c < pool_size; ++c) {
    Eigen::VectorXd v(k);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < k; ++i) v(i) = rng.next_normal();
      norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    pool.col(c) = v / std::sqrt(norm2);
  }

  std::vector<Eigen::VectorXd> net;
  net.push_back(pool.col(0));
  Eigen::VectorXd dist2 =
      (pool.colwise() - pool.col(0)).colwise().squaredNorm().transpose();
  // Stop slightly inside eps: pool gaps must not push off-pool probes past
  // the covering radius. Separation still exceeds 0.9*eps, so the packing
  // cardinality stays far below (1 + 2/eps)^k at these dimensions.
  const double stop = 0.9 * eps;
  const double eps2 = stop * stop;
  for (;;) {
    int far = 0;
    const double worst = dist2.maxCoeff(&far);
    if (worst <= eps2) break;
    const Eigen::VectorXd next = pool.col(far);
    net.push_back(next);
    dist2 = dist2.cwiseMin(
        (pool.colwise() - next).colwise().squaredNorm().transpose());
  }
  return net;
}

Eigen::VectorXd real_embedding(const Eigen::VectorXcd& z) {
  Eigen::VectorXd out(2 * z.size());
  out.head(z.size()) = z.real();
  out.tail(z.size()) = z.imag();
  return out;
}

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& B) {
  const auto l = B.rows();
  const auto m = B.cols();
  Eigen::MatrixXd out(2 * l, 2 * m);
  out.topLeftCorner(l, m) = B.real();
  out.topRightCorner(l, m) = -B.imag();
  out.bottomLeftCorner(l, m) = B.imag();
  out.bottomRightCorner(l, m) = B.real();
  return out;
}

RealSubspaceBasis real_embedding_basis(const SubspaceBasis& E) {
  const auto n = E.Q.rows();
  const auto k = E.Q.cols();
  RealSubspaceBasis out;
  out.Q.resize(2 * n, 2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    out.Q.col(j) = real_embedding(Eigen::VectorXcd(E.Q.col(j)));
    out.Q.col(k + j) = real_embedding(
        Eigen::VectorXcd(std::complex<double>(0.0, 1.0) * E.Q.col(j)));
  }
  return out;
}

namespace {

// Orders eigenvalues by real part then imaginary part, descending.
std::vector<int> spectral_order(const Eigen::VectorXcd& vals) {
  std::vector<int> idx(vals.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (vals(a).real() != vals(b).real())
      return vals(a).real() > vals(b).real();
    return vals(a).imag() > vals(b).imag();
  });
  return idx;
}

// Unit norm plus the sign convention: the largest-magnitude coordinate
// (lowest index on ties) is rotated to be positive real.
void canonicalize(Eigen::VectorXcd& v) {
  v.normalize();
  int arg = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best) {
      best = m;
      arg = i;
    }
  }
  if (best > 0.0) v *= std::conj(v(arg)) / best;
}

template <typename Mat>
SpectralData assemble(const Mat& A, const Eigen::VectorXcd& vals,
                      const Eigen::MatrixXcd& vecs, bool symmetric_input) {
  SpectralData out;
  const std::vector<int> order = spectral_order(vals);
  const int n = static_cast<int>(vals.size());
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(vecs.rows(), n);
  out.residuals.resize(n);
  const Eigen::MatrixXcd Ac = A.template cast<std::complex<double>>();
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = vals(order[k]);
    Eigen::VectorXcd v = vecs.col(order[k]);
    canonicalize(v);
    out.eigenvectors.col(k) = v;
    out.residuals(k) = (Ac * v - out.eigenvalues(k) * v).norm();
  }
  out.symmetric_input = symmetric_input;
  return out;
}

}  // namespace

SpectralData eigenpairs(const Eigen::MatrixXd& A, bool symmetric_hint) {
  if (A.rows() != A.cols()) throw ArgumentError("eigenpairs: matrix not square");
  if (symmetric_hint) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
      throw NumericalError("eigenpairs: self-adjoint solver did not converge");
    const Eigen::VectorXcd vals =
        solver.eigenvalues().cast<std::complex<double>>();
    const Eigen::MatrixXcd vecs =
        solver.eigenvectors().cast<std::complex<double>>();
    return assemble(A, vals, vecs, true);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenpairs: dense solver did not converge");
  return assemble(A, solver.eigenvalues(), solver.eigenvectors(), false);
}

SpectralData eigenpairs(const Eigen::MatrixXcd& A) {
  if (A.rows() != A.cols()) throw ArgumentError("eigenpairs: matrix not square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenpairs: complex solver did not converge");
  return assemble(A, solver.eigenvalues(), solver.eigenvectors(), false);
}

}  // namespace deloc
