#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "km/affine.hpp"
#include "km/base_algebra.hpp"
#include "km/errors.hpp"
#include "km/random.hpp"

using namespace km;

namespace {

constexpr Backend X = Backend::exact;

Scalar q(long n, long d = 1) { return Scalar::rational(n, d, X); }

BaseAlgebra abelian(int k) { return construct_base_algebra(BaseAlgebraSpec::abelian(k)); }
BaseAlgebra sl2() { return construct_base_algebra(BaseAlgebraSpec::sl2()); }

// sl2 basis order is (e, h, f).
constexpr int E = 0, H = 1, Fv = 2;

BaseVector vec(const BaseAlgebra& alg, std::initializer_list<std::pair<int, long>> terms) {
  BaseVector v(static_cast<std::size_t>(alg.dim()), Scalar::zero(X));
  for (const auto& [i, c] : terms) v[static_cast<std::size_t>(i)] = q(c);
  return v;
}

BaseVector random_vec(const BaseAlgebra& alg, Sampler& s) {
  BaseVector v;
  for (int i = 0; i < alg.dim(); ++i) v.push_back(s.exact_scalar());
  return v;
}

BaseVector add(BaseVector a, const BaseVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

bool is_zero(const BaseVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

KMElement mono(int dim, int comp, int deg, long coeff = 1) {
  return KMElement::loop_monomial(dim, comp, deg, q(coeff));
}

// Circle average of <u(z), v(z)> by an equispaced rule with 2048 nodes.
std::complex<double> quadrature_metric(const BaseAlgebra& alg, const KMElement& x, const KMElement& y) {
  const int nodes = 2048;
  std::complex<double> sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const auto z = std::polar(1.0, 2 * std::numbers::pi * j / nodes);
    for (int a = 0; a < alg.dim(); ++a)
      for (int b = 0; b < alg.dim(); ++b)
        sum += alg.form(a, b).to_complex() * x.loop[static_cast<std::size_t>(a)].evaluate(z) *
               y.loop[static_cast<std::size_t>(b)].evaluate(z);
  }
  return sum / static_cast<double>(nodes) - (x.c.to_complex() * y.d.to_complex() + x.d.to_complex() * y.c.to_complex());
}

}  // namespace

TEST(BaseAlgebra, AbelianPreset) {
  const auto a = abelian(1);
  EXPECT_EQ(a.dim(), 1);
  EXPECT_TRUE(a.bracket_is_zero());
  EXPECT_EQ(a.form(0, 0), q(1));
  EXPECT_EQ(a.kind(), AlgebraKind::abelian);
  const auto a2 = abelian(2);
  EXPECT_EQ(base_form(a2, vec(a2, {{0, 1}}), vec(a2, {{1, 1}})), q(0));
  EXPECT_EQ(base_form(a2, vec(a2, {{0, 1}}), vec(a2, {{0, 1}})), q(1));
  EXPECT_TRUE(is_zero(base_bracket(a2, vec(a2, {{0, 3}}), vec(a2, {{1, 2}}))));
}

TEST(BaseAlgebra, Sl2StructureConstants) {
  const auto g = sl2();
  EXPECT_EQ(base_bracket(g, vec(g, {{H, 1}}), vec(g, {{E, 1}})), vec(g, {{E, 2}}));
  EXPECT_EQ(base_bracket(g, vec(g, {{H, 1}}), vec(g, {{Fv, 1}})), vec(g, {{Fv, -2}}));
  EXPECT_EQ(base_bracket(g, vec(g, {{E, 1}}), vec(g, {{Fv, 1}})), vec(g, {{H, 1}}));
  EXPECT_EQ(g.kind(), AlgebraKind::semisimple);
}

TEST(BaseAlgebra, Sl2FormInvariance) {
  const auto g = sl2();
  const auto h = vec(g, {{H, 1}}), e = vec(g, {{E, 1}}), f = vec(g, {{Fv, 1}});
  EXPECT_EQ(base_form(g, base_bracket(g, h, e), f) + base_form(g, e, base_bracket(g, h, f)), q(0));
}

TEST(BaseAlgebra, RandomJacobiAndInvariance) {
  Sampler s(21);
  for (const auto& g : {sl2(), construct_base_algebra(BaseAlgebraSpec::su2()),
                        construct_base_algebra(parse_base_spec("abelian:2+sl2"))}) {
    for (int t = 0; t < 100; ++t) {
      const auto x = random_vec(g, s), y = random_vec(g, s), z = random_vec(g, s);
      const auto jac = add(add(base_bracket(g, x, base_bracket(g, y, z)), base_bracket(g, y, base_bracket(g, z, x))),
                           base_bracket(g, z, base_bracket(g, x, y)));
      EXPECT_TRUE(is_zero(jac));
      EXPECT_EQ(base_form(g, base_bracket(g, x, y), z) + base_form(g, y, base_bracket(g, x, z)), q(0));
    }
  }
}

TEST(BaseAlgebra, ProductJacobiOnAllBasisTriples) {
  const auto g = construct_base_algebra(BaseAlgebraSpec::product({BaseAlgebraSpec::abelian(2), BaseAlgebraSpec::sl2()}));
  ASSERT_EQ(g.dim(), 5);
  EXPECT_EQ(g.kind(), AlgebraKind::reductive_product);
  // Brute force over basis triples, independent of the validator.
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) {
        const auto x = basis_vector(g, i), y = basis_vector(g, j), z = basis_vector(g, k);
        EXPECT_TRUE(is_zero(add(add(base_bracket(g, x, base_bracket(g, y, z)), base_bracket(g, y, base_bracket(g, z, x))),
                                base_bracket(g, z, base_bracket(g, x, y)))));
      }
  EXPECT_TRUE(validate_base_algebra(g).ok());
}

TEST(BaseAlgebra, Su2FormIsPositiveDefinite) {
  const auto g = construct_base_algebra(BaseAlgebraSpec::su2());
  for (int i = 0; i < 3; ++i) EXPECT_EQ(g.form(i, i), q(2));
  EXPECT_TRUE(validate_base_algebra(g).ok());
}

TEST(BaseAlgebra, Errors) {
  EXPECT_ANY_THROW(construct_base_algebra(BaseAlgebraSpec::product({})));
  EXPECT_ANY_THROW(construct_base_algebra(BaseAlgebraSpec::abelian(0)));
  const auto g = sl2();
  EXPECT_THROW(base_bracket(g, vec(g, {{0, 1}}), BaseVector{q(1)}), DimensionMismatch);
  EXPECT_THROW(base_form(g, vec(g, {{0, 1}}), BaseVector{q(1)}), DimensionMismatch);
}

TEST(BaseAlgebra, ValidatorCatchesBrokenConstants) {
  // [e0, e1] = e0 but [e1, e0] = e0 too: antisymmetry violated.
  std::vector<Scalar> c(8, q(0));
  c[0 * 4 + 1 * 2 + 0] = q(1);
  c[1 * 4 + 0 * 2 + 0] = q(1);
  std::vector<Scalar> b{q(1), q(0), q(0), q(1)};
  const BaseAlgebra broken(2, c, b, AlgebraKind::semisimple, {{0, 2, false, "broken"}});
  const auto v = validate_base_algebra(broken);
  EXPECT_FALSE(v.antisymmetric);
  EXPECT_FALSE(v.ok());
}

TEST(Affine, DerivationActsAsEulerOperator) {
  const auto a = abelian(1);
  for (int k : {-3, -1, 1, 2, 5}) {
    const auto r = km_bracket(a, KMElement::derivation(1, X), mono(1, 0, k));
    EXPECT_EQ(r, mono(1, 0, k, k));
  }
}

TEST(Affine, CocycleOfInverseMonomials) {
  const auto a = abelian(1);
  const auto r = km_bracket(a, mono(1, 0, 1), mono(1, 0, -1));
  EXPECT_TRUE(r.loop[0].is_zero());
  EXPECT_EQ(r.c, q(-1));
  EXPECT_EQ(r.d, q(0));
  EXPECT_EQ(cocycle(a, mono(1, 0, 1).loop, mono(1, 0, -1).loop), q(-1));
  // Residue oracle: omega(z^m, z^n) = Res(z^m * n z^{n-1}) = n delta_{m,-n}.
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n)
      EXPECT_EQ(cocycle(a, mono(1, 0, m).loop, mono(1, 0, n).loop), q(m + n == 0 ? n : 0));
}

TEST(Affine, BracketAntisymmetricAndCentral) {
  Sampler s(22);
  for (const auto& g : {abelian(1), abelian(3), sl2()}) {
    for (int t = 0; t < 50; ++t) {
      const auto x = s.km_element(g.dim(), 4, X), y = s.km_element(g.dim(), 4, X);
      EXPECT_TRUE(km_bracket(g, x, x).is_zero());
      EXPECT_TRUE((km_bracket(g, x, y) + km_bracket(g, y, x)).is_zero());
      EXPECT_TRUE(km_bracket(g, KMElement::central(g.dim(), X), x).is_zero());
      EXPECT_EQ(km_bracket(g, x, y).d, q(0));
    }
  }
}

TEST(Affine, CocycleDiagonalVanishes) {
  Sampler s(23);
  const auto g = sl2();
  for (int t = 0; t < 50; ++t) {
    const auto f = s.loop(3, 5, X);
    EXPECT_EQ(cocycle(g, f, f), q(0));
  }
}

TEST(Affine, CocycleConditionOverSl2) {
  Sampler s(24);
  const auto g = sl2();
  for (int t = 0; t < 100; ++t) {
    const auto f = s.loop(3, 4, X), h = s.loop(3, 4, X), k = s.loop(3, 4, X);
    EXPECT_EQ(cocycle(g, loop_bracket(g, f, h), k) + cocycle(g, loop_bracket(g, h, k), f) +
                  cocycle(g, loop_bracket(g, k, f), h),
              q(0));
  }
}

TEST(Affine, JacobiRandomTriples) {
  Sampler s(25);
  for (const auto& g : {abelian(1), abelian(3), sl2()}) {
    for (int t = 0; t < 60; ++t) {
      const auto x = s.km_element(g.dim(), 4, X), y = s.km_element(g.dim(), 4, X), z = s.km_element(g.dim(), 4, X);
      const auto jac = km_bracket(g, x, km_bracket(g, y, z)) + km_bracket(g, y, km_bracket(g, z, x)) +
                       km_bracket(g, z, km_bracket(g, x, y));
      EXPECT_TRUE(jac.is_zero()) << describe(jac);
    }
  }
}

TEST(Affine, MetricExamples) {
  const auto a = abelian(1);
  EXPECT_EQ(km_metric(a, KMElement::central(1, X), KMElement::derivation(1, X)), q(-1));
  EXPECT_EQ(km_metric(a, KMElement::central(1, X), KMElement::central(1, X)), q(0));
  EXPECT_EQ(km_metric(a, KMElement::derivation(1, X), KMElement::derivation(1, X)), q(0));
  EXPECT_EQ(km_metric(a, mono(1, 0, 1), mono(1, 0, -1)), q(1));
  EXPECT_EQ(km_metric(a, mono(1, 0, 1), mono(1, 0, 1)), q(0));
  EXPECT_EQ(km_metric(a, mono(1, 0, 0), KMElement::central(1, X)), q(0));
}

TEST(Affine, MetricMatchesQuadrature) {
  Sampler s(26);
  for (const auto& g : {abelian(1), abelian(2), sl2()}) {
    EXPECT_NEAR(std::abs(quadrature_metric(g, mono(g.dim(), 0, 1), mono(g.dim(), 0, -1)) -
                         km_metric(g, mono(g.dim(), 0, 1), mono(g.dim(), 0, -1)).to_complex()),
                0.0, 1e-10);
    for (int t = 0; t < 30; ++t) {
      const auto x = s.km_element(g.dim(), 6, X), y = s.km_element(g.dim(), 6, X);
      const auto exact = km_metric(g, x, y);
      EXPECT_NEAR(std::abs(quadrature_metric(g, x, y) - exact.to_complex()), 0.0, 1e-10);
      EXPECT_EQ(exact, km_metric(g, y, x));
    }
  }
}

TEST(Affine, MetricInvarianceIncludingDerivation) {
  Sampler s(27);
  for (const auto& g : {abelian(1), abelian(3), sl2()}) {
    for (int t = 0; t < 50; ++t) {
      const auto zs = {s.km_element(g.dim(), 4, X), KMElement::derivation(g.dim(), X), KMElement::central(g.dim(), X)};
      const auto x = s.km_element(g.dim(), 4, X), y = s.km_element(g.dim(), 4, X);
      for (const auto& z : zs)
        EXPECT_EQ(km_metric(g, km_bracket(g, z, x), y) + km_metric(g, x, km_bracket(g, z, y)), q(0));
    }
  }
}

TEST(Affine, ClassifyType) {
  EXPECT_EQ(classify_km_type(abelian(3)).label, KMTypeLabel::euclidean);
  EXPECT_EQ(classify_km_type(sl2()).label, KMTypeLabel::semisimple);
  const auto mixed = classify_km_type(construct_base_algebra(parse_base_spec("abelian:1+sl2")));
  EXPECT_EQ(mixed.label, KMTypeLabel::mixed);
  ASSERT_EQ(mixed.factors.size(), 2u);
  EXPECT_EQ(mixed.factors[0], KMTypeLabel::euclidean);
  EXPECT_EQ(mixed.factors[1], KMTypeLabel::semisimple);
}

TEST(Affine, DerivedAlgebraOfEuclideanCaseHasNoDOrZeroMode) {
  const auto g = abelian(2);
  const auto basis = km_truncated_basis(2, 3, X);
  for (const auto& x : basis)
    for (const auto& y : basis) {
      const auto r = km_bracket(g, x, y);
      EXPECT_EQ(r.d, q(0));
      for (const auto& comp : r.loop) EXPECT_EQ(comp.coeff(0), q(0));
    }
}

TEST(Affine, CoordinatesRoundTrip) {
  Sampler s(28);
  for (int t = 0; t < 20; ++t) {
    const auto x = s.km_element(3, 4, X);
    EXPECT_EQ(km_from_coordinates(km_coordinates(x, 4), 3, 4), x);
  }
  EXPECT_THROW(km_coordinates(mono(1, 0, 5), 4), DimensionMismatch);
}

TEST(Affine, MismatchErrors) {
  const auto g = sl2();
  EXPECT_THROW(km_bracket(g, KMElement::zero(3, X), KMElement::zero(3, Backend::floating)), BackendMismatch);
  EXPECT_THROW(km_bracket(g, KMElement::zero(3, X), KMElement::zero(2, X)), DimensionMismatch);
}
