#include <gtest/gtest.h>

#include <cmath>

#include "cbq/gallery.hpp"
#include "cbq/geometry.hpp"
#include "cbq/map_spec.hpp"
#include "cbq/maps.hpp"
#include "cbq/sampling.hpp"
#include "test_support.hpp"

namespace cbq {
namespace {

using testing::pt;
const Complex i{0.0, 1.0};

TEST(Phi, WorkedValues) {
  EXPECT_EQ(phi(pt({0, 0}), pt({1, 0})), Complex(1.0));
  EXPECT_EQ(phi(pt({i, 0}), pt({0, 0})), Complex(-1.0));
  EXPECT_EQ(phi(pt({1.0 + i, 1.0 - i}), pt({1, 1})), Complex(-2.0));
}

TEST(Phi, DimensionMismatchIsInputError) {
  EXPECT_THROW(phi(pt({0, 0}), pt({0})), DimensionError);
  EXPECT_THROW(psi(pt({0, 0}), pt({0})), InputError);
  EXPECT_THROW(conjugation_defect(pt({0}), pt({0, 0})), InputError);
}

TEST(Phi, MatchesOracleAndIsSymmetric) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(6));
    const Point x = random_point(rng, n);
    const Point y = random_point(rng, n);
    EXPECT_LE(std::abs(phi(x, y) - testing::phi_oracle(x, y)), 1e-12);
    EXPECT_EQ(phi(x, y), phi(y, x));
  }
}

TEST(Phi, TranslationScalingAndConjugationLaws) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(5));
    const Point x = random_point(rng, n);
    const Point y = random_point(rng, n);
    const Point z = random_point(rng, n);
    const Complex c = rng.complex_uniform(2.0);
    EXPECT_LE(std::abs(phi(x + z, y + z) - phi(x, y)), 1e-12);
    EXPECT_LE(std::abs(phi(c * x, c * y) - c * c * phi(x, y)), 1e-11);
    EXPECT_LE(std::abs(phi(conjugate_point(x), conjugate_point(y)) - std::conj(phi(x, y))), 1e-12);
  }
}

TEST(Psi, WorkedValues) {
  EXPECT_EQ(psi(pt({3, 4}), pt({i, 2.0 * i})), 0.0);
  EXPECT_EQ(psi(pt({i, 2.0 * i}), pt({3.0 * i, 4})), 3.0);
  EXPECT_EQ(psi(pt({i, i}), pt({i, i})), 2.0);
}

TEST(ConjugatePoint, Examples) {
  EXPECT_EQ(conjugate_point(pt({1, 2})), pt({1, 2}));
  EXPECT_EQ(conjugate_point(pt({i, 0})), pt({-i, 0}));
  EXPECT_EQ(conjugate_point(pt({1.0 + 2.0 * i, 3.0 - i})), pt({1.0 - 2.0 * i, 3.0 + i}));
}

TEST(ConjugationDefect, WorkedValues) {
  // phi(i, i) = 0, phi(-i, i) = -4.
  EXPECT_EQ(conjugation_defect(pt({i}), pt({i})), Complex(4.0));
  EXPECT_EQ(conjugation_defect(pt({1, 2}), pt({i, 3.0 - i})), Complex(0.0));
  const Point x = pt({1.0 + i, 0});
  const Point y = pt({2.0 + i, 0});
  EXPECT_EQ(conjugation_defect(x, y), Complex(4.0, -4.0));
  EXPECT_LE(std::abs(testing::phi_oracle(x, y) - testing::phi_oracle(testing::conj_oracle(x), y) -
                     Complex(4.0, -4.0)),
            1e-12);
}

TEST(ConjugationDefect, AgreesWithDirectDifference) {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(5));
    const Point x = random_point(rng, n);
    const Point y = random_point(rng, n);
    const Complex direct = testing::phi_oracle(x, y) - testing::phi_oracle(testing::conj_oracle(x), y);
    const Complex defect = conjugation_defect(x, y);
    ASSERT_LE(std::abs(defect - direct), 1e-12 * (1.0 + std::abs(direct)) * 10);
    ASSERT_NEAR(defect.real() / 4.0, psi(x, y), 1e-12);
  }
}

TEST(Orthogonality, Examples) {
  const auto id = is_complex_orthogonal(ComplexMatrix::Identity(3, 3), 1e-12);
  EXPECT_TRUE(id.orthogonal);
  EXPECT_EQ(id.residual, 0.0);

  ComplexMatrix flip = ComplexMatrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  EXPECT_TRUE(is_complex_orthogonal(flip, 1e-12).orthogonal);

  // [[sqrt2, i], [-i, sqrt2]]: columns (sqrt2, -i) and (i, sqrt2) have
  // bilinear squares 2 - 1 = 1 and -1 + 2 = 1 and cross term 0.
  ComplexMatrix hyper(2, 2);
  hyper << std::sqrt(2.0), i, -i, std::sqrt(2.0);
  const ComplexMatrix gram = testing::gram_oracle(hyper);
  EXPECT_LE((gram - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(is_complex_orthogonal(hyper, 1e-12).orthogonal);
  // It is not unitary: Q^H Q != Id.
  EXPECT_GT((hyper.adjoint() * hyper - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1.0);

  ComplexMatrix scaled = 2.0 * ComplexMatrix::Identity(2, 2);
  const auto bad = is_complex_orthogonal(scaled, 1e-8);
  EXPECT_FALSE(bad.orthogonal);
  EXPECT_DOUBLE_EQ(bad.residual, 3.0);

  EXPECT_THROW(is_complex_orthogonal(ComplexMatrix::Zero(2, 3), 1e-8), DimensionError);
}

TEST(MatrixExp, MatchesClosedFormRotation) {
  // exp([[0, a], [-a, 0]]) = [[cos a, sin a], [-sin a, cos a]] for complex a.
  for (const Complex a : {Complex(0.3, 0.0), Complex(0.7, -0.4), Complex(2.5, 1.5), Complex(0.0, 3.0)}) {
    ComplexMatrix gen(2, 2);
    gen << 0.0, a, -a, 0.0;
    ComplexMatrix expected(2, 2);
    expected << std::cos(a), std::sin(a), -std::sin(a), std::cos(a);
    const double scale = 1.0 + expected.cwiseAbs().maxCoeff();
    EXPECT_LE((matrix_exp(gen) - expected).cwiseAbs().maxCoeff(), 1e-13 * scale) << a;
  }
}

TEST(RandomOrthogonal, TrivialCases) {
  EXPECT_EQ(random_complex_orthogonal(1, 99), ComplexMatrix::Identity(1, 1));
  EXPECT_EQ(random_complex_orthogonal(4, 99, 0.0), ComplexMatrix::Identity(4, 4));
  EXPECT_THROW(random_complex_orthogonal(0, 1), DimensionError);
}

TEST(RandomOrthogonal, IsOrthogonalAndDeterministic) {
  for (Eigen::Index n = 1; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ComplexMatrix q = random_complex_orthogonal(n, seed);
      const auto check = is_complex_orthogonal(q, 1e-10);
      ASSERT_TRUE(check.orthogonal) << "n=" << n << " seed=" << seed << " residual=" << check.residual;
      ASSERT_EQ(q, random_complex_orthogonal(n, seed));
    }
  }
  EXPECT_NE(random_complex_orthogonal(3, 1), random_complex_orthogonal(3, 2));
}

TEST(AffineOrthogonalMap, PreservesPhiAndInverts) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(5));
    const AffineOrthogonalMap m(random_complex_orthogonal(n, 1000 + trial), random_point(rng, n));
    const Point x = random_point(rng, n);
    const Point y = random_point(rng, n);
    EXPECT_LE(std::abs(phi(m(x), m(y)) - phi(x, y)), 1e-9);
    EXPECT_LE(max_abs_diff(m.inverse(m(x)), x), 1e-11);
  }
  EXPECT_THROW(AffineOrthogonalMap(2.0 * ComplexMatrix::Identity(2, 2), Point::Zero(2)), InputError);
  EXPECT_THROW(AffineOrthogonalMap(ComplexMatrix::Identity(2, 2), Point::Zero(3)), DimensionError);
}

TEST(Rho, ActionsAndLaws) {
  const RhoTag tau = rho::Conjugation{};
  const RhoTag tau_d = scaled_conjugation(Complex(1.0, 1.0));
  EXPECT_EQ(apply_rho(tau, Complex(2.0, 3.0)), Complex(2.0, -3.0));
  // (1+i)/(1-i) = i, so tau_d(1) = i.
  EXPECT_LE(std::abs(apply_rho(tau_d, Complex(1.0)) - i), 1e-15);
  EXPECT_TRUE(rho_equivalent(tau, scaled_conjugation(1.0)));
  EXPECT_TRUE(rho_equivalent(tau, scaled_conjugation(3.0)));
  EXPECT_FALSE(rho_equivalent(tau, tau_d));
  EXPECT_FALSE(rho_equivalent(tau, rho::Identity{}));
  EXPECT_THROW(scaled_conjugation(0.0), InputError);
}

TEST(SemiAffineMap, PhiLawsPerRho) {
  Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(4));
    const Complex d = rng.complex_uniform(2.0);
    if (std::abs(d) < 0.1) continue;
    const RhoTag tags[] = {rho::Identity{}, rho::Conjugation{}, scaled_conjugation(d)};
    const AffineOrthogonalMap outer(random_complex_orthogonal(n, 2000 + trial), random_point(rng, n));
    for (const RhoTag& r : tags) {
      const SemiAffineMap f{r, outer};
      const Point x = random_point(rng, n);
      const Point y = random_point(rng, n);
      const Complex p = phi(x, y);
      EXPECT_LE(std::abs(phi(f(x), f(y)) - rho_phi_law(r, p)), 1e-9 * phi_scale(f(x), f(y)));
    }
    // tau_d keeps phi = d^2 exactly.
    const SemiAffineMap f{scaled_conjugation(d), outer};
    const Point x = random_point(rng, n);
    const Point y = x + d * random_unit_direction(rng, n);
    EXPECT_LE(std::abs(phi(f(x), f(y)) - d * d), 1e-9 * phi_scale(f(x), f(y)));
  }
}

TEST(ApplyMap, Examples) {
  const MapSpec id = SemiAffineMap{rho::Identity{}, AffineOrthogonalMap::identity(2)};
  const MapSpec conj = SemiAffineMap{rho::Conjugation{}, AffineOrthogonalMap::identity(2)};
  EXPECT_EQ(apply_map(id, pt({i, 2})), pt({i, 2}));
  EXPECT_EQ(apply_map(conj, pt({i, 2})), pt({-i, 2}));

  ComplexMatrix flip = ComplexMatrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  const MapSpec shifted = SemiAffineMap{rho::Identity{}, AffineOrthogonalMap(flip, pt({1, 0}))};
  EXPECT_EQ(apply_map(shifted, pt({i, i})), pt({1.0 + i, -i}));

  EXPECT_THROW(apply_map(id, pt({i})), DimensionError);
}

TEST(ApplyMap, TabulatedLookup) {
  TabulatedMap t;
  t.n = 2;
  t.samples = {{pt({0, 0}), pt({1, 1})}, {pt({i, 0}), pt({-i, 0})}};
  const MapSpec spec = t;
  EXPECT_EQ(apply_map(spec, pt({i, 0})), pt({-i, 0}));
  EXPECT_THROW(apply_map(spec, pt({2, 0})), UnsampledPoint);
  EXPECT_THROW(apply_map(spec, pt({0})), DimensionError);
}

}  // namespace
}  // namespace cbq
