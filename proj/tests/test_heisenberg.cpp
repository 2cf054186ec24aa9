#include <gtest/gtest.h>

#include "km/errors.hpp"
#include "km/heisenberg.hpp"
#include "km/random.hpp"

using namespace km;

namespace {

constexpr Backend X = Backend::exact;

Scalar q(long n, long d = 1) { return Scalar::rational(n, d, X); }
Scalar I() { return Scalar::imaginary_unit(X); }

BaseAlgebra abelian(int k) { return construct_base_algebra(BaseAlgebraSpec::abelian(k)); }

HeisenbergElement gen(int k, Epsilon eps, int n, int i) { return HeisenbergElement::generator(k, eps, n, i, X); }

HeisenbergElement random_heis(int k, Epsilon eps, Sampler& s) {
  auto h = HeisenbergElement::zero(k, eps, X);
  for (int n = -3; n <= 3; ++n)
    for (int i = 0; i < k; ++i)
      if (n != 0 && s.unit() < 0.6) h.add_mode(n, i, s.exact_scalar());
  h.central = s.exact_scalar();
  return h;
}

Involution identity_involution(int dim) {
  Involution rho;
  rho.base_map.assign(static_cast<std::size_t>(dim), std::vector<Scalar>(static_cast<std::size_t>(dim), q(0)));
  for (int i = 0; i < dim; ++i) rho.base_map[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = q(1);
  rho.label = "identity";
  return rho;
}

}  // namespace

TEST(Heisenberg, DefiningRelation) {
  const auto r = heisenberg_bracket(gen(2, Epsilon::one, 1, 0), gen(2, Epsilon::one, -1, 0));
  EXPECT_TRUE(r.modes.empty());
  EXPECT_EQ(r.central, q(1));
  EXPECT_TRUE(heisenberg_bracket(gen(2, Epsilon::one, 1, 0), gen(2, Epsilon::one, -1, 1)).is_zero());
  const auto ri = heisenberg_bracket(gen(1, Epsilon::i, 3, 0), gen(1, Epsilon::i, -3, 0));
  EXPECT_EQ(ri.central, I());
  EXPECT_TRUE(heisenberg_bracket(gen(1, Epsilon::one, 2, 0), gen(1, Epsilon::one, -1, 0)).is_zero());
}

TEST(Heisenberg, BilinearAntisymmetricJacobi) {
  Sampler s(31);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_heis(2, Epsilon::i, s), y = random_heis(2, Epsilon::i, s), z = random_heis(2, Epsilon::i, s);
    const Scalar a = s.exact_scalar();
    EXPECT_TRUE(heisenberg_bracket(x, x).is_zero());
    EXPECT_EQ(heisenberg_bracket(x, y) + heisenberg_bracket(y, x) * q(1), HeisenbergElement::zero(2, Epsilon::i, X));
    EXPECT_EQ(heisenberg_bracket(x * a + y, z), heisenberg_bracket(x, z) * a + heisenberg_bracket(y, z));
    EXPECT_TRUE(heisenberg_bracket(x, heisenberg_bracket(y, z)).is_zero());
  }
}

TEST(Heisenberg, EpsilonMismatchThrows) {
  EXPECT_ANY_THROW(heisenberg_bracket(gen(1, Epsilon::one, 1, 0), gen(1, Epsilon::i, -1, 0)));
}

TEST(DerivedIso, AbelianOneWindowFour) {
  const auto g = abelian(1);
  for (Epsilon eps : {Epsilon::one, Epsilon::i}) {
    const auto iso = derived_algebra_iso(g, 4, eps);
    EXPECT_TRUE(iso.certificate.ok());
    EXPECT_EQ(iso.certificate.derived_rank, 2u * 4u + 1u);
    // Independent check of the normalized relation on all mode pairs.
    for (int m = -4; m <= 4; ++m)
      for (int n = -4; n <= 4; ++n) {
        if (m == 0 || n == 0) continue;
        const auto x = iso.map.to_affine(gen(1, eps, m, 0));
        const auto y = iso.map.to_affine(gen(1, eps, n, 0));
        const auto r = km_bracket(g, x, y);
        const Scalar expected = m + n == 0 ? epsilon_value(eps, X) * q(m > 0 ? 1 : -1) : q(0);
        EXPECT_TRUE(r.loop[0].is_zero());
        EXPECT_EQ(r.c, expected) << "m=" << m << " n=" << n;
      }
  }
}

TEST(DerivedIso, HomomorphismOnBasisPairs) {
  const auto g = abelian(2);
  const auto iso = derived_algebra_iso(g, 3, Epsilon::one);
  ASSERT_TRUE(iso.certificate.ok());
  std::vector<KMElement> domain{KMElement::central(2, X)};
  for (int i = 0; i < 2; ++i)
    for (int n = -3; n <= 3; ++n)
      if (n != 0) domain.push_back(KMElement::loop_monomial(2, i, n, q(1)));
  for (const auto& x : domain)
    for (const auto& y : domain)
      EXPECT_EQ(iso.map.to_heisenberg(km_bracket(g, x, y)),
                heisenberg_bracket(iso.map.to_heisenberg(x), iso.map.to_heisenberg(y)));
}

TEST(DerivedIso, CrossIndexPairsVanish) {
  const auto g = abelian(2);
  const auto iso = derived_algebra_iso(g, 4, Epsilon::one);
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n)
      if (m != 0 && n != 0) {
        const auto r = km_bracket(g, iso.map.to_affine(gen(2, Epsilon::one, m, 0)), iso.map.to_affine(gen(2, Epsilon::one, n, 1)));
        EXPECT_TRUE(r.is_zero());
      }
}

TEST(DerivedIso, ZeroModeAndDAreOutsideDomain) {
  const auto iso = derived_algebra_iso(abelian(1), 3, Epsilon::one);
  EXPECT_ANY_THROW(iso.map.to_heisenberg(KMElement::loop_monomial(1, 0, 0, q(1))));
  EXPECT_ANY_THROW(iso.map.to_heisenberg(KMElement::derivation(1, X)));
  EXPECT_TRUE(iso.certificate.derived_excludes_d);
  EXPECT_TRUE(iso.certificate.derived_excludes_zero_mode);
}

TEST(DerivedIso, RejectsNonEuclidean) {
  EXPECT_THROW(derived_algebra_iso(construct_base_algebra(BaseAlgebraSpec::sl2()), 2, Epsilon::one), PreconditionError);
}

TEST(Involution, IdentityIsCertified) {
  const auto cert = check_involution(identity_involution(1), abelian(1), 4);
  EXPECT_TRUE(cert.ok());
  EXPECT_TRUE(cert.certified.certified());
}

TEST(Involution, CircleConjugationCertifiedOnAbelianOne) {
  const auto g = abelian(1);
  const auto rho = circle_conjugation(g, -1);
  EXPECT_EQ(rho.c_sign, -1);
  EXPECT_EQ(rho.d_sign, -1);
  const auto cert = check_involution(rho, g, 4);
  EXPECT_TRUE(cert.ok()) << cert.witness.value_or("");
}

TEST(Involution, WrongCentralSignIsRejected) {
  const auto g = abelian(1);
  auto rho = circle_conjugation(g, -1);
  rho.c_sign = 1;
  const auto cert = check_involution(rho, g, 2);
  EXPECT_FALSE(cert.ok());
  EXPECT_TRUE(cert.witness.has_value());
}

TEST(Involution, NonOrthogonalMatrixFailsWithWitness) {
  const auto g = abelian(2);
  Involution rho = identity_involution(2);
  rho.base_map = {{q(1), q(1)}, {q(0), q(-1)}};  // squares to id but does not preserve the form
  const auto cert = check_involution(rho, g, 2);
  EXPECT_TRUE(cert.involutive);
  EXPECT_FALSE(cert.automorphism);
  ASSERT_TRUE(cert.witness.has_value());
  EXPECT_FALSE(cert.witness->empty());
}

TEST(Osaka, NegationSatisfiesConditionThree) {
  const auto g = abelian(1);
  const auto cert = check_involution(negation_involution(g), g, 3);
  ASSERT_TRUE(cert.ok());
  const auto rep = osaka_validate(g, cert.certified, 3);
  EXPECT_TRUE(rep.condition1);
  EXPECT_TRUE(rep.condition2);
  EXPECT_TRUE(rep.condition3);
  EXPECT_TRUE(rep.irreducible);
}

TEST(Osaka, IdentityFailsConditionThree) {
  const auto g = abelian(1);
  const auto cert = check_involution(identity_involution(1), g, 3);
  const auto rep = osaka_validate(g, cert.certified, 3);
  EXPECT_FALSE(rep.condition3);
}

TEST(Osaka, IrreducibleOnlyInRankOne) {
  for (int k = 1; k <= 3; ++k) {
    const auto g = abelian(k);
    const auto cert = check_involution(negation_involution(g), g, 2);
    const auto rep = osaka_validate(g, cert.certified, 2);
    EXPECT_EQ(rep.irreducible, k == 1) << "k=" << k;
  }
}

TEST(Osaka, UncertifiedInvolutionThrows) {
  const auto g = abelian(1);
  EXPECT_THROW(osaka_validate(g, negation_involution(g), 2), PreconditionError);
}

TEST(RealForm, Dichotomy) {
  for (int k : {1, 2}) {
    const auto g = abelian(k);
    EXPECT_EQ(classify_real_form(g, heisenberg_real_form(g, Epsilon::one, 3)), RealFormType::noncompact);
    EXPECT_EQ(classify_real_form(g, heisenberg_real_form(g, Epsilon::i, 3)), RealFormType::compact);
  }
}

TEST(RealForm, MixedSpanIsRejected) {
  const auto g = abelian(1);
  // z and z^-1 give a real central term, z^2 and i z^-2 an imaginary one.
  std::vector<KMElement> basis{KMElement::loop_monomial(1, 0, 1, q(1)), KMElement::loop_monomial(1, 0, -1, q(1)),
                               KMElement::loop_monomial(1, 0, 2, q(1)), KMElement::loop_monomial(1, 0, -2, I()),
                               KMElement::central(1, X), KMElement::central(1, X) * I()};
  EXPECT_THROW(classify_real_form(g, basis), MixedTypeError);
}

TEST(RealForm, NotClosedSpanIsRejected) {
  const auto g = abelian(1);
  std::vector<KMElement> basis{KMElement::loop_monomial(1, 0, 1, q(1)), KMElement::loop_monomial(1, 0, -1, q(1))};
  EXPECT_THROW(classify_real_form(g, basis), PreconditionError);
}

TEST(RealForm, InvariantUnderRealRescaling) {
  Sampler s(32);
  const auto g = abelian(2);
  for (Epsilon eps : {Epsilon::one, Epsilon::i}) {
    auto basis = heisenberg_real_form(g, eps, 2);
    const auto expected = classify_real_form(g, basis);
    for (auto& v : basis) {
      Scalar r = s.exact_scalar().real_part();
      if (r.is_zero()) r = q(-3, 2);
      v *= r;
    }
    EXPECT_EQ(classify_real_form(g, basis), expected);
  }
}

TEST(RealForm, FixedSpanOfNegationIsTrivial) {
  const auto g = abelian(1);
  std::vector<KMElement> support;
  for (int k = -2; k <= 2; ++k) support.push_back(KMElement::loop_monomial(1, 0, k, q(1)));
  EXPECT_TRUE(fixed_real_span(negation_involution(g), g, support, 2).empty());
  // The identity fixes the whole real span: real dimension 2 * 5.
  EXPECT_EQ(fixed_real_span(identity_involution(1), g, support, 2).size(), 10u);
}
