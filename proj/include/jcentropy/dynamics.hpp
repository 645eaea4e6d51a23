#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fock.hpp"

namespace jcentropy {

// Default ceiling on the parity Gram scalars below which the two mixture
// components still behave as orthogonal (see mixed_field_entropy).
inline constexpr double kPiTolDefault = 1e-6;

// Unnormalized branch states of the resonant interaction at dimensionless
// time t, for an initially excited atom and field amplitude profile
// alpha_n = <n|alpha>:
//
//   c_n     = cos(t sqrt(n+1)) alpha_n
//   s_{n+1} = -i sin(t sqrt(n+1)) alpha_n
//
// |c> pairs with the excited atom, |s> with the ground atom. The sin term
// sourced by the top basis state has nowhere to go and is dropped; its
// weight is bounded by the coherent-state norm deficit.
struct Branches {
  FockVector c;
  FockVector s;
  double t = 0.0;
};

inline Branches evolve_branches(Complex alpha, double t, Eigen::Index dim,
                                double truncation_tol = kTruncationTol) {
  const FockVector a = coherent_state(alpha, dim, truncation_tol);
  Branches b;
  b.t = t;
  b.c.resize(dim);
  b.s = FockVector::Zero(dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    const double rabi = t * std::sqrt(static_cast<double>(n + 1));
    b.c[n] = std::cos(rabi) * a[n];
    if (n + 1 < dim) b.s[n + 1] = Complex(0.0, -1.0) * std::sin(rabi) * a[n];
  }
  return b;
}

// Reduced two-level density matrix. Only the independent entries are
// stored; rho21 is implicitly conj(rho12).
struct AtomicMatrix {
  double rho11 = 0.0;
  double rho22 = 0.0;
  Complex rho12{0.0, 0.0};

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m << rho11, rho12, std::conj(rho12), rho22;
    return m;
  }
};

// Atomic state for the field prepared as the p_plus : (1 - p_plus) parity
// mixture of +alpha and -alpha. The diagonal is mixture-independent; the
// coherence carries the weight difference. p_plus = 1 is the pure case.
inline AtomicMatrix atomic_density(const Branches& b, double p_plus) {
  AtomicMatrix m;
  m.rho11 = b.c.squaredNorm();
  m.rho22 = b.s.squaredNorm();
  m.rho12 = (2.0 * p_plus - 1.0) * b.c.dot(b.s);
  return m;
}

// Population difference <sigma_z> = <c|c> - <s|s>.
inline double atomic_inversion(const Branches& b) {
  return b.c.squaredNorm() - b.s.squaredNorm();
}

// Field state for the pure initial coherent state: rho_F = |c><c| + |s><s|.
inline FockOperator field_density_pure(const Branches& b) {
  return b.c * b.c.adjoint() + b.s * b.s.adjoint();
}

// Field state for the mixture: p rho_F + (1-p) Pi rho_F Pi. The parity
// conjugation only flips the sign of elements with odd index sum, so it is
// applied elementwise instead of by matrix products.
inline FockOperator field_density_mixed(const Branches& b, double p_plus) {
  FockOperator rho = field_density_pure(b);
  const double q = 1.0 - p_plus;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      rho(i, j) *= p_plus + q * sign;
    }
  }
  return rho;
}

// The eight scalars the closed-form entropy algebra runs on:
// overlaps i_jk = <j|k> and parity matrix elements pi_jk = <j|Pi|k>
// for j, k in {c, s}.
struct BranchGram {
  Complex i_cc, i_ss, i_cs, i_sc;
  Complex pi_cc, pi_ss, pi_cs, pi_sc;

  double max_parity_abs() const {
    return std::max(std::max(std::abs(pi_cc), std::abs(pi_ss)),
                    std::max(std::abs(pi_cs), std::abs(pi_sc)));
  }
};

inline BranchGram branch_gram(const Branches& b) {
  const FockVector pc = parity_apply(b.c);
  const FockVector ps = parity_apply(b.s);
  BranchGram g;
  g.i_cc = b.c.squaredNorm();
  g.i_ss = b.s.squaredNorm();
  g.i_cs = b.c.dot(b.s);
  g.i_sc = std::conj(g.i_cs);
  g.pi_cc = b.c.dot(pc);
  g.pi_ss = b.s.dot(ps);
  g.pi_cs = b.c.dot(ps);
  g.pi_sc = std::conj(g.pi_cs);
  return g;
}

// Linear entropy 1 - Tr(rho^2). For Hermitian rho the trace of the square
// equals the squared Frobenius norm, so no matrix product is formed; that
// keeps the t = 0 value accurate to machine precision.
inline double linear_entropy(const FockOperator& rho) {
  return 1.0 - rho.squaredNorm();
}

// (p rho_F + q Pi rho_F Pi)^2 assembled purely from outer products of the
// branch states and their parity images, with Gram scalars as weights:
//
//   sum_{j,k} i_jk [ p^2 |j><k| + q^2 Pi|j><k|Pi ]
//           + p q pi_jk [ Pi|j><k| + |j><k|Pi ]
//
// over ordered pairs (j,k) in {c,s}^2. Exercises the same reduction the
// closed-form entropy rests on; the direct matrix square is the cross-check.
inline FockOperator mixed_density_squared_assembled(const Branches& b,
                                                    double p_plus) {
  const double p = p_plus;
  const double q = 1.0 - p_plus;
  const BranchGram g = branch_gram(b);
  const FockVector pc = parity_apply(b.c);
  const FockVector ps = parity_apply(b.s);

  struct Term {
    Complex i, pi;
    const FockVector *j, *k, *paj, *pak;
  };
  const Term terms[4] = {
      {g.i_cc, g.pi_cc, &b.c, &b.c, &pc, &pc},
      {g.i_ss, g.pi_ss, &b.s, &b.s, &ps, &ps},
      {g.i_cs, g.pi_cs, &b.c, &b.s, &pc, &ps},
      {g.i_sc, g.pi_sc, &b.s, &b.c, &ps, &pc},
  };

  const Eigen::Index dim = b.c.size();
  FockOperator out = FockOperator::Zero(dim, dim);
  for (const Term& term : terms) {
    out += term.i * (p * p * (*term.j) * term.k->adjoint() +
                     q * q * (*term.paj) * term.pak->adjoint()) +
           p * q * term.pi * ((*term.paj) * term.k->adjoint() +
                              (*term.j) * term.pak->adjoint());
  }
  return out;
}

}  // namespace jcentropy
