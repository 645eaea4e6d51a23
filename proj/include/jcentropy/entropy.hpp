#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "dynamics.hpp"
#include "errors.hpp"
#include "fock.hpp"

namespace jcentropy {

// Guard on 1/2 - epsilon below which an atomic state counts as degenerate
// (pure): every formula with a 1/det or log(det) factor refuses to run.
inline constexpr double kDegeneracyTol = 1e-9;

// Below this epsilon the closed forms for g_coefficient and the entropy
// coefficients switch to their Taylor series; at the switch point both
// branches agree to better than 1e-12 relative.
inline constexpr double kEpsSwitch = 1e-6;

// Eigenvalues under this floor are treated as exact zeros by the
// eigendecomposition entropy (solver noise on rank-deficient states).
inline constexpr double kEigFloor = 1e-14;

// Split rho_A = (1/2) 1 + R with R traceless Hermitian. The eigenvalues of
// rho_A are 1/2 +- epsilon, and det rho_A = 1/4 - epsilon^2.
struct AtomicDecomposition {
  double delta = 0.0;    // rho11 - rho22
  double epsilon = 0.0;  // sqrt(delta^2/4 + |rho12|^2), in [0, 1/2]
  double det = 0.0;      // 1/4 - epsilon^2
  Eigen::Matrix2cd r_matrix;
};

inline AtomicDecomposition decompose_atomic(const AtomicMatrix& rho) {
  AtomicDecomposition d;
  d.delta = rho.rho11 - rho.rho22;
  d.epsilon = std::sqrt(0.25 * d.delta * d.delta + std::norm(rho.rho12));
  d.det = 0.25 - d.epsilon * d.epsilon;
  d.r_matrix << 0.5 * d.delta, rho.rho12, std::conj(rho.rho12), -0.5 * d.delta;
  return d;
}

// g(n) = [ (1/2+e)^n - (1/2-e)^n ] / (2e), the scalar that reduces powers
// of rho_A to degree one. The e -> 0 limit n (1/2)^{n-1} is reached through
// the even Taylor series, keeping the quotient fully accurate where direct
// cancellation would lose digits. g(0) = 0 by construction.
inline double g_coefficient(int n, double epsilon) {
  if (n <= 0) return 0.0;
  if (epsilon < kEpsSwitch) {
    const double e2 = epsilon * epsilon;
    double sum = n * std::pow(0.5, n - 1);
    if (n >= 3) {
      const double c3 = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
      sum += c3 * std::pow(0.5, n - 3) * e2;
    }
    if (n >= 5) {
      const double c5 = static_cast<double>(n) * (n - 1) * (n - 2) * (n - 3) *
                        (n - 4) / 120.0;
      sum += c5 * std::pow(0.5, n - 5) * e2 * e2;
    }
    return sum;
  }
  return (std::pow(0.5 + epsilon, n) - std::pow(0.5 - epsilon, n)) /
         (2.0 * epsilon);
}

// rho_A^n = g(n) rho_A - det(rho_A) g(n-1) 1, the Cayley-Hamilton
// reduction of any matrix power to an affine expression. Valid for every
// state including pure ones.
inline Eigen::Matrix2cd atomic_power(const AtomicMatrix& rho, int n) {
  if (n < 1) throw ConfigError("atomic_power: n must be >= 1");
  const AtomicDecomposition d = decompose_atomic(rho);
  return g_coefficient(n, d.epsilon) * rho.matrix() -
         d.det * g_coefficient(n - 1, d.epsilon) *
             Eigen::Matrix2cd::Identity();
}

// Chebyshev polynomials by the three-term recurrence. The arguments used
// here satisfy x >= 1, where T_n(x) = cosh(n arccosh x) grows fast but the
// recurrence stays forward-stable for the small n this library needs.
inline double chebyshev_t(int n, double x) {
  if (n <= 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double chebyshev_u(int n, double x) {
  if (n < 0) return 0.0;
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// The same power through the Chebyshev form
//
//   rho_A^n = det^{n/2} [ T_n(x) 1 + U_{n-1}(x) R / sqrt(det) ],
//   x = 1 / (2 sqrt(det)),
//
// an independent route used to cross-check atomic_power. Undefined as the
// state approaches pure (det -> 0), hence the degeneracy guard.
inline Eigen::Matrix2cd atomic_power_chebyshev(const AtomicMatrix& rho,
                                               int n) {
  if (n < 1) throw ConfigError("atomic_power_chebyshev: n must be >= 1");
  const AtomicDecomposition d = decompose_atomic(rho);
  if (d.det <= kDegeneracyTol) {
    throw DegenerateStateError(
        "atomic_power_chebyshev: det = " + std::to_string(d.det) +
        " too close to zero; use atomic_power instead");
  }
  const double root = std::sqrt(d.det);
  const double x = 1.0 / (2.0 * root);
  return std::pow(root, n) *
         (chebyshev_t(n, x) * Eigen::Matrix2cd::Identity() +
          (chebyshev_u(n - 1, x) / root) * d.r_matrix);
}

// Coefficients of the affine entropy operator -ln rho_A = f1 rho_A + f2 1,
// i.e. the unique line through -ln x at the two eigenvalues 1/2 +- epsilon:
//
//   f1 = ln((1-2e)/(1+2e)) / (2e),   f2 = -( ln det + f1 ) / 2.
//
// f1 has a removable singularity at e = 0 (limit -2), handled by its Taylor
// series. As e -> 1/2 both coefficients diverge; the degeneracy guard
// rejects that region.
struct EntropyCoefficients {
  double f1 = 0.0;
  double f2 = 0.0;
};

inline EntropyCoefficients entropy_coefficients(
    const AtomicDecomposition& dec) {
  const double e = dec.epsilon;
  if (0.5 - e <= kDegeneracyTol) {
    throw DegenerateStateError(
        "entropy_coefficients: state within " + std::to_string(0.5 - e) +
        " of pure; the affine entropy operator diverges");
  }
  EntropyCoefficients c;
  if (e < kEpsSwitch) {
    const double e2 = e * e;
    c.f1 = -2.0 - (8.0 / 3.0) * e2 - (32.0 / 5.0) * e2 * e2;
  } else {
    c.f1 = std::log((1.0 - 2.0 * e) / (1.0 + 2.0 * e)) / (2.0 * e);
  }
  c.f2 = -0.5 * (std::log(dec.det) + c.f1);
  return c;
}

// -x ln x with the 0 ln 0 := 0 convention.
inline double entropy_term(double x) {
  return x > 0.0 ? -x * std::log(x) : 0.0;
}

inline double binary_entropy(double p) {
  return entropy_term(p) + entropy_term(1.0 - p);
}

// Atomic von Neumann entropy from the eigenvalues 1/2 +- epsilon. Exact
// for every valid state, including pure ones where the affine operator
// form has no meaning.
inline double atomic_entropy(const AtomicMatrix& rho) {
  const double e = decompose_atomic(rho).epsilon;
  return entropy_term(0.5 + e) + entropy_term(0.5 - e);
}

// The field entropy operator restricted to span{|c>, |s>}, written out as
// four outer products:
//
//   S_F = (f1 + f2 i_ss / det) |c><c| + (f1 + f2 i_cc / det) |s><s|
//       - (f2 / det) ( i_sc |s><c| + i_cs |c><s| ).
//
// Its expectation in the field state gives the field entropy without any
// diagonalization. Throws DegenerateStateError while the field state is
// still (numerically) pure.
inline FockOperator field_entropy_operator(const Branches& b) {
  const AtomicDecomposition d = decompose_atomic(atomic_density(b, 1.0));
  const EntropyCoefficients f = entropy_coefficients(d);  // throws if pure
  const BranchGram g = branch_gram(b);
  const double r = f.f2 / d.det;
  return (f.f1 + r * g.i_ss.real()) * b.c * b.c.adjoint() +
         (f.f1 + r * g.i_cc.real()) * b.s * b.s.adjoint() -
         r * (g.i_sc * b.s * b.c.adjoint() + g.i_cs * b.c * b.s.adjoint());
}

// Field entropy for the pure initial coherent state, evaluated entirely in
// the 2x2 Gram algebra of the branch pair: with G the overlap matrix
// [[i_cc, i_cs], [i_sc, i_ss]],
//
//   Tr(rho_F^k) = Tr(G^k),  so
//   S_F = (f1 + f2/det) Tr(G^2) - (f2/det) Tr(G^3).
//
// Near t = 0 the field state is still pure and the coefficients diverge;
// there the entropy comes from the exact eigenvalues 1/2 +- epsilon
// instead, which gives 0 at t = 0.
inline double field_entropy_pure(const Branches& b) {
  const AtomicDecomposition d = decompose_atomic(atomic_density(b, 1.0));
  if (0.5 - d.epsilon <= kDegeneracyTol) {
    return entropy_term(0.5 + d.epsilon) + entropy_term(0.5 - d.epsilon);
  }
  const EntropyCoefficients f = entropy_coefficients(d);
  const BranchGram gr = branch_gram(b);
  Eigen::Matrix2cd g;
  g << gr.i_cc, gr.i_cs, gr.i_sc, gr.i_ss;
  const Eigen::Matrix2cd g2 = g * g;
  const double u = f.f1 + f.f2 / d.det;
  const double v = -f.f2 / d.det;
  return u * g2.trace().real() + v * (g2 * g).trace().real();
}

// Closed-form entropy of the parity-mixed field state:
//
//   S_F_mix = S_F(pure case) + h(p_plus),
//
// with h the binary entropy of the mixing weights. The split is exact only
// while every parity Gram scalar <j|Pi|k> is negligible, i.e. while the two
// mixture components evolve into orthogonal corners of the space. The
// formula is evaluated everywhere; `valid` reports whether the state is
// inside that window at the given tolerance, and max_pi carries the actual
// ceiling so callers can judge marginal cases.
struct MixedEntropy {
  double value = 0.0;
  bool valid = false;
  double max_pi = 0.0;
};

inline MixedEntropy mixed_field_entropy(const Branches& b, double p_plus,
                                        double pi_tol = kPiTolDefault) {
  MixedEntropy out;
  out.max_pi = branch_gram(b).max_parity_abs();
  out.valid = out.max_pi < pi_tol;
  out.value = field_entropy_pure(b) + binary_entropy(p_plus);
  return out;
}

// Independent route: -sum lambda ln lambda over the spectrum, with
// sub-floor eigenvalues clipped to zero. Costs a full diagonalization and
// shares no code with the closed forms above.
inline double oracle_entropy(const FockOperator& rho) {
  const Spectrum spectrum = hermitian_eig(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
    const double lambda = spectrum.eigenvalues[i];
    if (lambda >= kEigFloor) s -= lambda * std::log(lambda);
  }
  return s;
}

// Largest elementwise deviation between rho_F^{n+1} assembled through the
// atomic-power reduction and the directly multiplied power (pure case):
//
//   rho_F^{n+1} = sum_{j,k} (rho_A^n)_{jk} B_jk,
//
// where B_cc = |c><c|, B_cs = |c><s|, etc., and rho_A is indexed in the
// same (c, s) order. Returns the deviation so tests can assert on it.
inline double power_relation_deviation(const Branches& b, int n) {
  if (n < 0) throw ConfigError("power_relation_deviation: n must be >= 0");
  const AtomicMatrix rho_a = atomic_density(b, 1.0);
  const Eigen::Matrix2cd m = (n == 0)
                                 ? Eigen::Matrix2cd::Identity().eval()
                                 : atomic_power(rho_a, n);
  const FockOperator assembled =
      m(0, 0) * b.c * b.c.adjoint() + m(0, 1) * b.c * b.s.adjoint() +
      m(1, 0) * b.s * b.c.adjoint() + m(1, 1) * b.s * b.s.adjoint();

  const FockOperator rho_f = field_density_pure(b);
  FockOperator direct = rho_f;
  for (int k = 0; k < n; ++k) direct = direct * rho_f;
  return (assembled - direct).cwiseAbs().maxCoeff();
}

}  // namespace jcentropy
