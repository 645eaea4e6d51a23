#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <jcentropy/jcentropy.hpp>

#include "test_support.hpp"

using namespace jcentropy;
using testsupport::make_rng;
using testsupport::max_abs;
using testsupport::random_amplitude;
using testsupport::random_atomic;
using testsupport::uniform;

namespace {

Eigen::Matrix2cd direct_power(const Eigen::Matrix2cd& m, int n) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
  for (int k = 0; k < n; ++k) out = out * m;
  return out;
}

}  // namespace

TEST_CASE("atomic decomposition") {
  SECTION("maximally mixed state") {
    const AtomicDecomposition d = decompose_atomic({0.5, 0.5, {0.0, 0.0}});
    REQUIRE(d.delta == 0.0);
    REQUIRE(d.epsilon == 0.0);
    REQUIRE(d.det == 0.25);
  }

  SECTION("pure projector") {
    const AtomicDecomposition d = decompose_atomic({1.0, 0.0, {0.0, 0.0}});
    REQUIRE(d.delta == 1.0);
    REQUIRE(d.epsilon == 0.5);
    REQUIRE(d.det == 0.0);
  }

  SECTION("worked example") {
    const AtomicDecomposition d = decompose_atomic({0.7, 0.3, {0.1, 0.0}});
    REQUIRE(std::abs(d.epsilon - std::sqrt(0.05)) < 1e-15);
    REQUIRE(std::abs(d.det - 0.2) < 1e-15);
  }

  SECTION("reconstruction and eigenvalues") {
    auto rng = make_rng(301);
    for (int trial = 0; trial < 30; ++trial) {
      const AtomicMatrix m = random_atomic(rng, 0.0);
      const AtomicDecomposition d = decompose_atomic(m);
      const Eigen::Matrix2cd rebuilt =
          0.5 * Eigen::Matrix2cd::Identity() + d.r_matrix;
      REQUIRE(max_abs(rebuilt - m.matrix()) < 1e-16);

      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(m.matrix());
      REQUIRE(std::abs(eig.eigenvalues()[0] - (0.5 - d.epsilon)) < 1e-13);
      REQUIRE(std::abs(eig.eigenvalues()[1] - (0.5 + d.epsilon)) < 1e-13);
    }
  }
}

TEST_CASE("power reduction scalar") {
  SECTION("fixed values") {
    REQUIRE(g_coefficient(0, 0.3) == 0.0);
    REQUIRE(std::abs(g_coefficient(1, 0.3) - 1.0) < 1e-15);
    REQUIRE(std::abs(g_coefficient(1, 0.0) - 1.0) < 1e-15);
    // Degenerate limit: n (1/2)^{n-1}.
    REQUIRE(std::abs(g_coefficient(4, 0.0) - 0.5) < 1e-15);
    // Pure state: the (1/2 - e)^n term vanishes.
    for (int n : {1, 3, 8}) {
      REQUIRE(std::abs(g_coefficient(n, 0.5) - 1.0) < 1e-15);
    }
  }

  SECTION("series and closed form agree at the switch point") {
    for (int n = 1; n <= 12; ++n) {
      const double lo = g_coefficient(n, 0.9999999e-6);  // series branch
      const double hi = g_coefficient(n, 1.0000001e-6);  // closed branch
      REQUIRE(std::abs(hi - lo) < 1e-9);
    }
  }

  SECTION("satisfies the characteristic recurrence") {
    // x^{n+1} - y^{n+1} = (x+y)(x^n - y^n) - xy (x^{n-1} - y^{n-1}) with
    // x + y = 1 and xy = det gives g(n+1) = g(n) - det g(n-1).
    const double e = 0.3;
    const double det = 0.25 - e * e;
    for (int n = 1; n <= 10; ++n) {
      const double lhs = g_coefficient(n + 1, e);
      const double rhs = g_coefficient(n, e) - det * g_coefficient(n - 1, e);
      REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("atomic matrix powers") {
  SECTION("first power is the matrix itself") {
    const AtomicMatrix m{0.7, 0.3, {0.1, -0.05}};
    REQUIRE(max_abs(atomic_power(m, 1) - m.matrix()) < 1e-14);
    REQUIRE(max_abs(atomic_power_chebyshev(m, 1) - m.matrix()) < 1e-12);
  }

  SECTION("projector is idempotent") {
    const AtomicMatrix m{1.0, 0.0, {0.0, 0.0}};
    REQUIRE(max_abs(atomic_power(m, 5) - m.matrix()) < 1e-14);
  }

  SECTION("maximally mixed scales as (1/2)^n") {
    const AtomicMatrix m{0.5, 0.5, {0.0, 0.0}};
    REQUIRE(max_abs(atomic_power(m, 3) -
                    0.125 * Eigen::Matrix2cd::Identity()) < 1e-15);
    REQUIRE(max_abs(atomic_power_chebyshev(m, 3) -
                    0.125 * Eigen::Matrix2cd::Identity()) < 1e-12);
  }

  SECTION("worked example against repeated multiplication") {
    const AtomicMatrix m{0.7, 0.3, {0.1, 0.0}};
    REQUIRE(max_abs(atomic_power(m, 6) - direct_power(m.matrix(), 6)) <
            1e-12);
  }

  SECTION("determinant 0.2 case matches across routes") {
    const AtomicMatrix m{0.5, 0.5, {std::sqrt(0.05), 0.0}};
    REQUIRE(std::abs(decompose_atomic(m).det - 0.2) < 1e-15);
    REQUIRE(max_abs(atomic_power_chebyshev(m, 4) - atomic_power(m, 4)) <
            1e-10);
  }

  SECTION("three routes agree on random states") {
    auto rng = make_rng(302);
    for (int trial = 0; trial < 40; ++trial) {
      const AtomicMatrix m = random_atomic(rng, 0.05);
      for (int n : {1, 2, 5, 9, 12}) {
        const Eigen::Matrix2cd direct = direct_power(m.matrix(), n);
        REQUIRE(max_abs(atomic_power(m, n) - direct) < 1e-10);
        REQUIRE(max_abs(atomic_power_chebyshev(m, n) - direct) < 1e-10);
      }
    }
  }

  SECTION("chebyshev route refuses near-pure states") {
    REQUIRE_THROWS_AS(atomic_power_chebyshev({1.0, 0.0, {0.0, 0.0}}, 2),
                      DegenerateStateError);
  }

  SECTION("nonpositive powers are rejected") {
    REQUIRE_THROWS_AS(atomic_power({0.5, 0.5, {0.0, 0.0}}, 0), ConfigError);
    REQUIRE_THROWS_AS(atomic_power_chebyshev({0.5, 0.5, {0.0, 0.0}}, -1),
                      ConfigError);
  }
}

TEST_CASE("chebyshev polynomials") {
  SECTION("classical closed forms") {
    const double x = 1.7;
    REQUIRE(std::abs(chebyshev_t(3, x) - (4.0 * x * x * x - 3.0 * x)) <
            1e-13);
    REQUIRE(std::abs(chebyshev_u(2, x) - (4.0 * x * x - 1.0)) < 1e-13);
  }

  SECTION("values at the edge of the interval") {
    for (int n = 0; n <= 10; ++n) {
      REQUIRE(std::abs(chebyshev_t(n, 1.0) - 1.0) < 1e-13);
      REQUIRE(std::abs(chebyshev_u(n, 1.0) - (n + 1.0)) < 1e-12);
    }
  }

  SECTION("hyperbolic form above the interval") {
    const double x = 1.3;
    const double y = std::acosh(x);
    for (int n : {1, 4, 9}) {
      REQUIRE(std::abs(chebyshev_t(n, x) - std::cosh(n * y)) < 1e-10);
    }
  }
}

TEST_CASE("entropy operator coefficients") {
  SECTION("degenerate limit") {
    const AtomicDecomposition d = decompose_atomic({0.5, 0.5, {0.0, 0.0}});
    const EntropyCoefficients c = entropy_coefficients(d);
    REQUIRE(c.f1 == -2.0);
    REQUIRE(std::abs(c.f2 - (1.0 + std::log(2.0))) < 1e-14);
  }

  SECTION("quarter-spread value") {
    AtomicMatrix m{0.75, 0.25, {0.0, 0.0}};  // epsilon = 1/4
    const EntropyCoefficients c = entropy_coefficients(decompose_atomic(m));
    REQUIRE(std::abs(c.f1 - 2.0 * std::log(1.0 / 3.0)) < 1e-14);
  }

  SECTION("interpolation identity at both eigenvalues") {
    // The affine operator reproduces -ln x exactly at x = 1/2 +- e; that
    // fixes both coefficients, so checking it checks everything.
    for (double e : {1e-8, 1e-6, 1e-4, 0.1, 0.25, 0.4, 0.49, 0.499999}) {
      AtomicMatrix m{0.5 + e, 0.5 - e, {0.0, 0.0}};
      const EntropyCoefficients c = entropy_coefficients(decompose_atomic(m));
      REQUIRE(std::abs(c.f1 * (0.5 + e) + c.f2 + std::log(0.5 + e)) < 1e-9);
      REQUIRE(std::abs(c.f1 * (0.5 - e) + c.f2 + std::log(0.5 - e)) < 1e-9);
    }
  }

  SECTION("series and closed form agree at the switch point") {
    // The closed form's log-quotient cancels to ~1e-10 absolute at
    // e = 1e-6; the switch to the series exists precisely to beat that
    // floor, so the two branches can only be compared at it.
    auto f1_at = [](double e) {
      AtomicMatrix m{0.5 + e, 0.5 - e, {0.0, 0.0}};
      return entropy_coefficients(decompose_atomic(m)).f1;
    };
    REQUIRE(std::abs(f1_at(0.9999999e-6) - f1_at(1.0000001e-6)) < 1e-9);
  }

  SECTION("pure states are refused") {
    REQUIRE_THROWS_AS(entropy_coefficients(
                          decompose_atomic({1.0, 0.0, {0.0, 0.0}})),
                      DegenerateStateError);
    try {
      entropy_coefficients(decompose_atomic({1.0, 0.0, {0.0, 0.0}}));
      FAIL("expected DegenerateStateError");
    } catch (const Error& e) {
      REQUIRE(e.category() == "degenerate-state");
    }
  }
}

TEST_CASE("atomic entropy") {
  SECTION("pure state gives exactly zero") {
    REQUIRE(atomic_entropy({1.0, 0.0, {0.0, 0.0}}) == 0.0);
  }

  SECTION("maximally mixed gives ln 2") {
    REQUIRE(std::abs(atomic_entropy({0.5, 0.5, {0.0, 0.0}}) - std::log(2.0)) <
            1e-15);
  }

  SECTION("matches a 2x2 eigensolver") {
    auto rng = make_rng(303);
    for (int trial = 0; trial < 30; ++trial) {
      const AtomicMatrix m = random_atomic(rng, 0.0);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(m.matrix());
      double expected = 0.0;
      for (int i = 0; i < 2; ++i) expected += entropy_term(eig.eigenvalues()[i]);
      REQUIRE(std::abs(atomic_entropy(m) - expected) < 1e-12);
    }
  }

  SECTION("matches the affine operator route when nondegenerate") {
    // S = f1 Tr(rho^2) + f2 with Tr(rho^2) = 1/2 + 2 e^2.
    auto rng = make_rng(304);
    for (int trial = 0; trial < 30; ++trial) {
      const AtomicMatrix m = random_atomic(rng, 1e-6);
      const AtomicDecomposition d = decompose_atomic(m);
      const EntropyCoefficients c = entropy_coefficients(d);
      const double trace_sq = 0.5 + 2.0 * d.epsilon * d.epsilon;
      REQUIRE(std::abs(atomic_entropy(m) - (c.f1 * trace_sq + c.f2)) < 1e-10);
    }
  }

  SECTION("equal-mixture trajectory value is the diagonal entropy") {
    const Branches b = evolve_branches({4.0, 0.0}, 10.0, 64);
    const AtomicMatrix m = atomic_density(b, 0.5);
    REQUIRE(m.rho12 == Complex(0.0, 0.0));
    const double expected = entropy_term(m.rho11) + entropy_term(m.rho22);
    REQUIRE(std::abs(atomic_entropy(m) - expected) < 1e-14);
    REQUIRE(std::abs(atomic_entropy(m) - std::log(2.0)) < 1e-3);
  }
}

TEST_CASE("field entropy operator") {
  const Branches b = evolve_branches({4.0, 0.0}, 10.0, 64);

  SECTION("outer-product form equals the matrix polynomial form") {
    const AtomicDecomposition d = decompose_atomic(atomic_density(b, 1.0));
    const EntropyCoefficients c = entropy_coefficients(d);
    const FockOperator rho = field_density_pure(b);
    const FockOperator poly = (c.f1 + c.f2 / d.det) * rho -
                              (c.f2 / d.det) * rho * rho;
    REQUIRE(max_abs(field_entropy_operator(b) - poly) < 1e-10);
  }

  SECTION("is Hermitian and commutes with the field state") {
    const FockOperator s = field_entropy_operator(b);
    const FockOperator rho = field_density_pure(b);
    REQUIRE(max_abs(s - s.adjoint()) < 1e-12);
    REQUIRE(max_abs(s * rho - rho * s) < 1e-10);
  }

  SECTION("its expectation is the entropy") {
    const FockOperator s = field_entropy_operator(b);
    const double expectation =
        (s * field_density_pure(b)).trace().real();
    REQUIRE(std::abs(expectation - field_entropy_pure(b)) < 1e-10);
    REQUIRE(std::abs(expectation - atomic_entropy(atomic_density(b, 1.0))) <
            1e-8);
    REQUIRE(std::abs(expectation - oracle_entropy(field_density_pure(b))) <
            1e-7);
  }

  SECTION("pure field state is refused") {
    REQUIRE_THROWS_AS(
        field_entropy_operator(evolve_branches({4.0, 0.0}, 0.0, 64)),
        DegenerateStateError);
  }
}

TEST_CASE("pure-case field entropy") {
  SECTION("zero at t = 0") {
    const double s = field_entropy_pure(evolve_branches({4.0, 0.0}, 0.0, 64));
    REQUIRE(std::abs(s) < 1e-14);
  }

  SECTION("equals the atomic entropy along the trajectory") {
    double worst = 0.0;
    for (int i = 1; i <= 12; ++i) {
      const Branches b = evolve_branches({4.0, 0.0}, 1.0 * i, 64);
      worst = std::max(worst,
                       std::abs(field_entropy_pure(b) -
                                atomic_entropy(atomic_density(b, 1.0))));
    }
    REQUIRE(worst < 1e-8);
  }

  SECTION("gram algebra route equals the dense trace route") {
    for (double t : {3.0, 7.0, 13.0}) {
      const Branches b = evolve_branches({4.0, 0.0}, t, 64);
      const AtomicDecomposition d = decompose_atomic(atomic_density(b, 1.0));
      const EntropyCoefficients c = entropy_coefficients(d);
      const FockOperator rho = field_density_pure(b);
      const FockOperator rho2 = rho * rho;
      const double dense = (c.f1 + c.f2 / d.det) * rho2.trace().real() -
                           (c.f2 / d.det) * (rho2 * rho).trace().real();
      REQUIRE(std::abs(field_entropy_pure(b) - dense) < 1e-10);
    }
  }

  SECTION("matches the eigendecomposition oracle") {
    for (double t : {2.0, 5.0, 9.0}) {
      const Branches b = evolve_branches({2.0, 0.0}, t, 30);
      REQUIRE(std::abs(field_entropy_pure(b) -
                       oracle_entropy(field_density_pure(b))) < 1e-7);
    }
  }

  SECTION("stays usable just above the degeneracy guard") {
    // Very close to t = 0 the closed form runs into 1/det amplification;
    // absolute accuracy degrades towards ~1e-6 there, which is why the
    // sweep grid never samples below t = 0.05.
    const Branches b = evolve_branches({4.0, 0.0}, 1e-4, 64);
    const double s = field_entropy_pure(b);
    const double reference = oracle_entropy(field_density_pure(b));
    REQUIRE(std::abs(s - reference) < 1e-5);
  }
}

TEST_CASE("mixed-field entropy") {
  SECTION("t = 0 equal mixture carries exactly the mixing entropy") {
    const MixedEntropy m =
        mixed_field_entropy(evolve_branches({4.0, 0.0}, 0.0, 64), 0.5);
    REQUIRE(std::abs(m.value - std::log(2.0)) < 1e-12);
    REQUIRE(m.valid);
    REQUIRE(m.max_pi < 1e-12);
  }

  SECTION("pure weight reduces to the pure-case entropy") {
    const Branches b = evolve_branches({4.0, 0.0}, 7.0, 64);
    const MixedEntropy m = mixed_field_entropy(b, 1.0);
    REQUIRE(m.value == field_entropy_pure(b));
  }

  SECTION("decomposes as pure-case entropy plus binary entropy") {
    const Branches b = evolve_branches({4.0, 0.0}, 4.0, 64);
    for (double p : {0.25, 0.5, 0.9}) {
      const MixedEntropy m = mixed_field_entropy(b, p);
      REQUIRE(std::abs(m.value - field_entropy_pure(b) - binary_entropy(p)) <
              1e-15);
    }
  }

  SECTION("agrees with the oracle inside the validity window") {
    const Branches b = evolve_branches({4.0, 0.0}, 5.0, 64);
    const MixedEntropy m = mixed_field_entropy(b, 0.5, 1e-3);
    REQUIRE(m.valid);
    REQUIRE(std::abs(m.value - oracle_entropy(field_density_mixed(b, 0.5))) <
            1e-6);
  }

  SECTION("the flag marks exactly where the split breaks") {
    const Branches b = evolve_branches({4.0, 0.0}, 13.0, 64);
    const MixedEntropy m = mixed_field_entropy(b, 0.5, 1e-3);
    REQUIRE_FALSE(m.valid);
    REQUIRE(m.max_pi > 0.3);
    REQUIRE(std::abs(m.value - oracle_entropy(field_density_mixed(b, 0.5))) >
            0.1);
  }
}

TEST_CASE("eigendecomposition entropy") {
  SECTION("pure projector") {
    const FockVector a = coherent_state({2.0, 0.0}, 30);
    REQUIRE(std::abs(oracle_entropy(a * a.adjoint())) < 1e-9);
  }

  SECTION("explicit finite spectra") {
    FockOperator rho = FockOperator::Zero(10, 10);
    rho(0, 0) = 0.5;
    rho(7, 7) = 0.5;
    REQUIRE(std::abs(oracle_entropy(rho) - std::log(2.0)) < 1e-12);

    rho.setZero();
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.3;
    rho(3, 3) = 0.2;
    const double expected =
        entropy_term(0.5) + entropy_term(0.3) + entropy_term(0.2);
    REQUIRE(std::abs(oracle_entropy(rho) - expected) < 1e-12);
  }

  SECTION("t = 0 equal mixture") {
    const FockOperator rho =
        field_density_mixed(evolve_branches({4.0, 0.0}, 0.0, 64), 0.5);
    REQUIRE(std::abs(oracle_entropy(rho) - std::log(2.0)) < 1e-10);
  }

  SECTION("propagates the hermiticity check") {
    FockOperator bad = FockOperator::Zero(3, 3);
    bad(0, 2) = 1.0;
    REQUIRE_THROWS_AS(oracle_entropy(bad), NonHermitianError);
  }
}

TEST_CASE("power relation between field and atom") {
  SECTION("n = 0 is the density itself") {
    const Branches b = evolve_branches({4.0, 0.0}, 7.0, 64);
    REQUIRE(power_relation_deviation(b, 0) < 1e-14);
  }

  SECTION("holds for the powers used by the entropy reduction") {
    for (double t : {3.0, 7.0, 13.0}) {
      const Branches b = evolve_branches({4.0, 0.0}, t, 64);
      for (int n = 1; n <= 4; ++n) {
        REQUIRE(power_relation_deviation(b, n) < 1e-10);
      }
    }
  }

  SECTION("holds away from the reference amplitude") {
    const Branches b = evolve_branches({2.5, 0.0}, 3.0, 44);
    REQUIRE(power_relation_deviation(b, 3) < 1e-10);
  }

  SECTION("negative powers are rejected") {
    REQUIRE_THROWS_AS(
        power_relation_deviation(evolve_branches({2.0, 0.0}, 1.0, 30), -1),
        ConfigError);
  }
}
