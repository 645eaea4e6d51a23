#pragma once

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace jcentropy {

using Complex = std::complex<double>;

// Complex amplitudes over the truncated number basis |0>, ..., |dim-1>.
using FockVector = Eigen::VectorXcd;

// Dense operator on the same truncated space.
using FockOperator = Eigen::MatrixXcd;

// Largest coherent-state norm deficit tolerated before a basis counts as
// too small.
inline constexpr double kTruncationTol = 1e-10;

// Basis size that keeps the coherent-state norm deficit under kTruncationTol
// for |alpha| up to about 6 (Poisson tail bound with a safety margin).
inline Eigen::Index default_dim(Complex alpha) {
  const double a = std::abs(alpha);
  return static_cast<Eigen::Index>(std::ceil(a * a + 8.0 * a + 10.0));
}

// |alpha> with amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!). Built by the
// multiplicative recurrence amp_{n+1} = amp_n * alpha / sqrt(n+1), so no
// factorial is ever formed. Throws TruncationError when more than
// truncation_tol of the norm falls outside the basis.
inline FockVector coherent_state(Complex alpha, Eigen::Index dim,
                                 double truncation_tol = kTruncationTol) {
  if (dim < 1) throw ConfigError("coherent_state: dim must be >= 1");
  FockVector v(dim);
  v[0] = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 0; n + 1 < dim; ++n) {
    v[n + 1] = v[n] * alpha / std::sqrt(static_cast<double>(n + 1));
  }
  const double deficit = 1.0 - v.squaredNorm();
  if (deficit > truncation_tol) {
    throw TruncationError("coherent_state: dim " + std::to_string(dim) +
                          " leaves norm deficit " + std::to_string(deficit) +
                          " for |alpha| = " + std::to_string(std::abs(alpha)));
  }
  return v;
}

// Photon-number parity (-1)^n as a diagonal operator.
inline FockOperator parity_operator(Eigen::Index dim) {
  FockOperator p = FockOperator::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

// Parity action on a state: flips the sign of every odd-n amplitude.
// Sends |alpha> to |-alpha> without building the operator.
inline FockVector parity_apply(const FockVector& v) {
  FockVector out = v;
  for (Eigen::Index n = 1; n < out.size(); n += 2) out[n] = -out[n];
  return out;
}

// Phase-ladder lowering V |n> = |n-1>, V |0> = 0 (one-sided shift, not the
// weighted annihilator).
inline FockVector phase_lower(const FockVector& v) {
  const Eigen::Index dim = v.size();
  FockVector out = FockVector::Zero(dim);
  if (dim > 1) out.head(dim - 1) = v.tail(dim - 1);
  return out;
}

// Phase-ladder raising V^dag |n> = |n+1>. The top amplitude falls off the
// truncated basis; its magnitude is reported through `discarded` so callers
// can judge whether the truncation mattered.
inline FockVector phase_raise(const FockVector& v, double& discarded) {
  const Eigen::Index dim = v.size();
  FockVector out = FockVector::Zero(dim);
  if (dim > 1) out.tail(dim - 1) = v.head(dim - 1);
  discarded = std::abs(v[dim - 1]);
  return out;
}

inline FockVector phase_raise(const FockVector& v) {
  double discarded = 0.0;
  return phase_raise(v, discarded);
}

// Eigendecomposition of a Hermitian operator. Eigenvalues ascend and the
// eigenvector columns match their order.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

inline double hermiticity_error(const FockOperator& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline Spectrum hermitian_eig(const FockOperator& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) {
    throw NonHermitianError("hermitian_eig: matrix is not square");
  }
  const double herm = hermiticity_error(m);
  if (herm > tol) {
    throw NonHermitianError("hermitian_eig: max|M - M^dag| = " +
                            std::to_string(herm) + " exceeds " +
                            std::to_string(tol));
  }
  Eigen::SelfAdjointEigenSolver<FockOperator> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error("internal", "hermitian_eig: eigensolver did not converge");
  }
  Spectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

}  // namespace jcentropy
