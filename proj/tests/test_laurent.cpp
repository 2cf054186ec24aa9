#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "km/errors.hpp"
#include "km/laurent.hpp"
#include "km/random.hpp"

using namespace km;

namespace {

constexpr Backend X = Backend::exact;
constexpr Backend F = Backend::floating;

Scalar q(long n, long d = 1) { return Scalar::rational(n, d, X); }

LaurentPoly poly(std::initializer_list<std::pair<int, Scalar>> terms, Backend b = X) {
  std::map<int, Scalar> m;
  for (const auto& [k, c] : terms) m[k] = c.convert(b);
  return LaurentPoly(b, m);
}

// Independent evaluation: Horner-free direct power sum.
std::complex<double> eval_direct(const LaurentPoly& f, std::complex<double> z) {
  std::complex<double> s = 0.0;
  for (const auto& [k, c] : f.coeffs()) s += c.to_complex() * std::pow(z, k);
  return s;
}

}  // namespace

TEST(Scalar, ExactArithmeticIsClosed) {
  const Scalar a = Scalar::exact(Rational(1, 3), Rational(2, 5));
  const Scalar b = Scalar::exact(Rational(-7, 4), Rational(1, 2));
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(a * Scalar::one(X), a);
  EXPECT_THROW(a / Scalar::zero(X), DomainError);
}

TEST(Scalar, BackendsDoNotMix) {
  EXPECT_THROW(Scalar::one(X) + Scalar::one(F), BackendMismatch);
}

TEST(Scalar, FloatRefusesNonFinite) {
  EXPECT_THROW(Scalar::floating(1e308) * Scalar::floating(1e308), DomainError);
  EXPECT_THROW(Scalar::floating(1.0) / Scalar::floating(0.0), DomainError);
}

TEST(Scalar, ImaginaryUnitSquaresToMinusOne) {
  const Scalar i = Scalar::imaginary_unit(X);
  EXPECT_EQ(i * i, q(-1));
  EXPECT_TRUE(i.is_imaginary());
  EXPECT_FALSE(i.is_real());
}

TEST(Laurent, CanonicalFormDropsZeros) {
  LaurentPoly p = poly({{1, q(1)}, {2, q(0)}});
  EXPECT_EQ(p.coeffs().size(), 1u);
  p.add_to_coeff(1, q(-1));
  EXPECT_TRUE(p.is_zero());
  EXPECT_FALSE(p.degree_bounds().has_value());
}

TEST(Laurent, FloatFlushesSubnormalDrift) {
  LaurentPoly p = poly({{0, Scalar::floating(1e-301)}}, F);
  EXPECT_TRUE(p.is_zero());
}

TEST(Laurent, MultiplyInverseMonomials) {
  EXPECT_EQ(lp_multiply(poly({{1, q(1)}}), poly({{-1, q(1)}})), poly({{0, q(1)}}));
}

TEST(Laurent, MultiplyDifferenceOfSquares) {
  const auto a = poly({{0, q(1)}, {1, q(1)}});
  const auto b = poly({{0, q(1)}, {1, q(-1)}});
  EXPECT_EQ(lp_multiply(a, b), poly({{0, q(1)}, {2, q(-1)}}));
}

TEST(Laurent, MultiplyBackendMismatchThrows) {
  EXPECT_THROW(lp_multiply(poly({{0, q(1)}}), poly({{0, q(1)}}, F)), BackendMismatch);
}

TEST(Laurent, MultiplyMatchesPointwiseEvaluation) {
  Sampler s(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Backend b = trial % 2 == 0 ? X : F;
    const auto a = s.laurent(4, b, 0.8);
    const auto c = s.laurent(4, b, 0.8);
    const auto p = lp_multiply(a, c);
    for (int j = 0; j < 16; ++j) {
      const auto z = std::polar(1.0, 2 * std::numbers::pi * j / 16.0 + 0.1);
      const auto expected = eval_direct(a, z) * eval_direct(c, z);
      EXPECT_LT(std::abs(p.evaluate(z) - expected), 1e-12 * (1 + std::abs(expected)));
    }
  }
}

TEST(Laurent, MultiplyAssociativeAndDistributiveExactly) {
  Sampler s(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = s.laurent(5, X);
    const auto b = s.laurent(5, X);
    const auto c = s.laurent(5, X);
    EXPECT_EQ(lp_multiply(lp_multiply(a, b), c), lp_multiply(a, lp_multiply(b, c)));
    EXPECT_EQ(lp_multiply(a, b + c), lp_multiply(a, b) + lp_multiply(a, c));
  }
}

TEST(Laurent, MultiplyDegreeBoundsAdd) {
  const auto a = poly({{-2, q(3)}, {1, q(1)}});
  const auto b = poly({{-1, q(1)}, {4, q(2)}});
  const auto bounds = lp_multiply(a, b).degree_bounds();
  ASSERT_TRUE(bounds.has_value());
  EXPECT_EQ(bounds->first, -3);
  EXPECT_EQ(bounds->second, 5);
}

TEST(Laurent, DerivativePowerRule) {
  EXPECT_EQ(lp_derivative(poly({{2, q(1)}})), poly({{1, q(2)}}));
  EXPECT_EQ(lp_derivative(poly({{-1, q(1)}})), poly({{-2, q(-1)}}));
  EXPECT_TRUE(lp_derivative(poly({{0, q(5)}})).is_zero());
}

TEST(Laurent, EulerOperatorScalesByDegree) {
  EXPECT_EQ(lp_euler(poly({{-3, q(1)}, {2, q(1, 2)}})), poly({{-3, q(-3)}, {2, q(1)}}));
}

TEST(Laurent, Residue) {
  EXPECT_EQ(lp_residue(poly({{-1, q(1)}})), q(1));
  EXPECT_EQ(lp_residue(poly({{2, q(1)}, {-1, q(3)}})), q(3));
  Sampler s(13);
  for (int trial = 0; trial < 200; ++trial)
    EXPECT_TRUE(lp_residue(lp_derivative(s.laurent(6, X))).is_zero());
}

TEST(Laurent, ResidueOfProductAndCirclePairing) {
  Sampler s(14);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = s.laurent(5, X);
    const auto b = s.laurent(5, X);
    EXPECT_EQ(lp_residue_of_product(a, b), lp_residue(lp_multiply(a, b)));
    EXPECT_EQ(lp_circle_pairing(a, b), lp_multiply(a, b).coeff(0));
  }
}

TEST(Laurent, AnnulusNormOfZPlusInverse) {
  const auto f = poly({{1, q(1)}, {-1, q(1)}}, F);
  const auto norm = lp_annulus_norm(f, 1);
  const double e = std::numbers::e;
  // Dense sampling of the whole closed annulus, not only its boundary.
  double dense = 0.0;
  for (int r = 0; r <= 100; ++r) {
    const double radius = std::exp(-1.0 + 2.0 * r / 100.0);
    for (int j = 0; j < 100; ++j)
      dense = std::max(dense, std::abs(eval_direct(f, std::polar(radius, 2 * std::numbers::pi * j / 100.0))));
  }
  EXPECT_NEAR(dense, e + 1 / e, 1e-12);
  EXPECT_NEAR(norm.estimate, 3.0862, 1e-4);
  EXPECT_NEAR(norm.estimate, dense, 1e-12);
  EXPECT_NEAR(norm.certified_upper, e + 1 / e, 1e-12);
}

TEST(Laurent, AnnulusNormConstantAndMonomial) {
  const auto c = lp_annulus_norm(poly({{0, Scalar::floating(3, 4)}}, F), 2);
  EXPECT_DOUBLE_EQ(c.estimate, 5.0);
  EXPECT_DOUBLE_EQ(c.certified_upper, 5.0);
  for (int k : {-3, 2}) {
    const auto m = lp_annulus_norm(poly({{k, q(1)}}), 2);
    EXPECT_NEAR(m.estimate, std::exp(2.0 * std::abs(k)), 1e-9);
    EXPECT_NEAR(m.certified_upper, std::exp(2.0 * std::abs(k)), 1e-9);
  }
  const auto z = lp_annulus_norm(LaurentPoly(F), 3);
  EXPECT_EQ(z.estimate, 0.0);
  EXPECT_EQ(z.certified_upper, 0.0);
}

TEST(Laurent, AnnulusNormMonotoneAndBounded) {
  Sampler s(15);
  double worst_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = s.laurent(4, F, 0.7);
    if (f.is_zero()) continue;
    double prev = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const auto norm = lp_annulus_norm(f, n);
      EXPECT_LE(norm.estimate, norm.certified_upper * (1 + 1e-12));
      EXPECT_GE(norm.estimate, prev * (1 - 1e-12));
      prev = norm.estimate;
    }
    const auto dense = lp_annulus_norm(f, 1, 10000);
    worst_gap = std::max(worst_gap, 1 - dense.estimate / dense.certified_upper);
  }
  RecordProperty("worst_relative_gap", std::to_string(worst_gap));
}

TEST(Laurent, RescaleArgumentIsComposition) {
  const auto f = poly({{-2, q(1)}, {3, q(2, 3)}});
  const Scalar a = q(2);
  const Scalar b = Scalar::exact(0, 1);
  EXPECT_EQ(f.rescale_argument(a * b), f.rescale_argument(b).rescale_argument(a));
  EXPECT_EQ(f.rescale_argument(a).coeff(3), q(16, 3));
}

TEST(Laurent, CircleReflectionIsInvolution) {
  Sampler s(16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = s.laurent(5, X);
    EXPECT_EQ(f.circle_reflection().circle_reflection(), f);
  }
}
