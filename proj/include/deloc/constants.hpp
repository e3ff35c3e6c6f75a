#pragma once

namespace deloc {

// Numerical tolerances used by the audits. One record, defaults below; the
// harness never overrides these silently.
struct Tolerances {
  double eig_residual = 1e-8;       // residual bound factor, times (1 + ||A||)
  double unit_norm = 1e-12;         // eigenvector normalization slack
  double orthogonality = 1e-10;     // pairwise orthogonality (symmetric case)
  double nsm_relative = 1e-8;       // negative second moment relative equality
  double frobenius_rel = 1e-10;     // sum s_j^2 vs entrywise norm
  double span_zero = 1e-10;         // distance treated as membership
  double real_embed = 1e-12;        // embedding product compatibility
  double density_integral = 1e-3;   // density curve mass slack
  double fourier_tail = 1e-6;       // certified truncation error target
  double multiplicity_gap = 1e-8;   // |lambda2 - lambda3| degeneracy flag
  double tie_tol = 1e-10;           // spectral-gap "decreased" tie band
  double zero_tol_rel = 1e-12;      // nodal zero set, relative to ||v||_inf
  double psd_floor = -1e-10;        // Laplacian min eigenvalue floor
};

// Unspecified absolute constants of the bounds under audit. Every audit that
// needs one takes it from here (or an explicit parameter); none is hard-coded
// at a call site.
struct Constants {
  double C0 = 3.0;               // small-ball constant for ||Gx|| and rows
  double halasz_C = 10.0;        // high-t characteristic function decay
  double C_audit = 3.0;          // G(n,p) property audit constant
  double c1 = 1.0;               // gap-decrease sufficient condition
  double c2 = 0.5;               //   "
  double M = 3.0;                // boundedness event ||A|| <= M sqrt(n)
  double s = 0.5;                // mass threshold scale, delta = (eps*s)^6
  double tensor_M_guard = 4.0;   // minimal M accepted by the tensorization audit
  int braess_exact_guard = 150;  // largest n for exact-mode a_minus
  int epsnet_k_guard = 12;       // largest sphere dimension for epsilon_net
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

inline const Constants& default_constants() {
  static const Constants c{};
  return c;
}

}  // namespace deloc
