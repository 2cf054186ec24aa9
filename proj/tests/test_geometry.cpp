#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "km/errors.hpp"
#include "km/geometry.hpp"
#include "km/heisenberg.hpp"
#include "km/random.hpp"

using namespace km;

namespace {

constexpr Backend X = Backend::exact;

Scalar q(long n, long d = 1) { return Scalar::rational(n, d, X); }
Scalar I() { return Scalar::imaginary_unit(X); }

BaseAlgebra abelian(int k) { return construct_base_algebra(BaseAlgebraSpec::abelian(k)); }
BaseAlgebra sl2() { return construct_base_algebra(BaseAlgebraSpec::sl2()); }

KMElement constant_loop(int dim, int comp) { return KMElement::loop_monomial(dim, comp, 0, q(1)); }

// Cyclic Jacobi rotations on a dense symmetric matrix.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        if (std::abs(a[p][r]) < 1e-300) continue;
        const double theta = (a[r][r] - a[p][p]) / (2 * a[p][r]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akr = a[k][r];
          a[k][p] = c * akp - s * akr;
          a[k][r] = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], ark = a[r][k];
          a[p][k] = c * apk - s * ark;
          a[r][k] = s * apk + c * ark;
        }
      }
  }
  std::vector<double> ev;
  for (std::size_t i = 0; i < n; ++i) ev.push_back(a[i][i]);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> oracle_spectrum(const BaseAlgebra& g, std::vector<KMElement> basis, bool with_cd) {
  if (with_cd) {
    basis.push_back(KMElement::central(g.dim(), X));
    basis.push_back(KMElement::derivation(g.dim(), X));
  }
  std::vector<std::vector<double>> gram(basis.size(), std::vector<double>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) gram[i][j] = km_metric(g, basis[i], basis[j]).to_complex().real();
  return jacobi_eigenvalues(gram);
}

}  // namespace

TEST(Geometry, ConnectionIsHalfBracket) {
  const auto g = abelian(1);
  const auto x = KMElement::loop_monomial(1, 0, 2, q(3)), y = KMElement::loop_monomial(1, 0, -2, q(1));
  const auto nabla = connection(g, x, y);
  EXPECT_TRUE(nabla.loop[0].is_zero());
  EXPECT_EQ(nabla.c, q(1, 2) * cocycle(g, x.loop, y.loop));
  EXPECT_TRUE(connection(g, x, x).is_zero());
}

TEST(Geometry, TorsionFreeOnSl2) {
  Sampler s(41);
  const auto g = sl2();
  for (int t = 0; t < 50; ++t) {
    const auto x = s.km_element(3, 3, X), y = s.km_element(3, 3, X);
    EXPECT_EQ(connection(g, x, y) - connection(g, y, x), km_bracket(g, x, y));
  }
}

TEST(Geometry, Sl2CurvatureExample) {
  const auto g = sl2();
  const auto e = constant_loop(3, 0), f = constant_loop(3, 2);
  EXPECT_EQ(curvature(g, e, f, e), KMElement::loop_monomial(3, 0, 0, q(1, 2)));
}

TEST(Geometry, EuclideanIsFlat) {
  Sampler s(42);
  for (int k : {1, 2, 3}) {
    const auto g = abelian(k);
    for (int t = 0; t < 100; ++t) {
      const auto a = s.km_element(k, 5, X, true, false), b = s.km_element(k, 5, X, true, false),
                 c = s.km_element(k, 5, X, true, false);
      EXPECT_TRUE(curvature(g, a, b, c).is_zero());
    }
  }
}

TEST(Geometry, CurvatureAntisymmetryAndBianchi) {
  Sampler s(43);
  for (const auto& g : {sl2(), abelian(2)}) {
    for (int t = 0; t < 40; ++t) {
      const auto a = s.km_element(g.dim(), 3, X), b = s.km_element(g.dim(), 3, X), c = s.km_element(g.dim(), 3, X);
      EXPECT_TRUE((curvature(g, a, b, c) + curvature(g, b, a, c)).is_zero());
      EXPECT_TRUE((curvature(g, a, b, c) + curvature(g, b, c, a) + curvature(g, c, a, b)).is_zero());
      EXPECT_TRUE(curvature(g, a, a, c).is_zero());
    }
  }
}

TEST(Geometry, MetricCompatibility) {
  Sampler s(44);
  for (const auto& g : {sl2(), abelian(3)}) {
    for (int t = 0; t < 40; ++t) {
      const auto z = s.km_element(g.dim(), 3, X), x = s.km_element(g.dim(), 3, X), y = s.km_element(g.dim(), 3, X);
      EXPECT_EQ(km_metric(g, connection(g, z, x), y) + km_metric(g, x, connection(g, z, y)), q(0));
    }
  }
}

TEST(Geometry, EuclideanSectionalCurvatureVanishes) {
  const auto g = abelian(1);
  const auto a = KMElement::loop_monomial(1, 0, 1, q(1)) + KMElement::loop_monomial(1, 0, -1, q(1));
  const auto b = KMElement::loop_monomial(1, 0, 1, I()) + KMElement::loop_monomial(1, 0, -1, -I());
  EXPECT_EQ(wedge_norm_squared(g, a, b), q(4));
  EXPECT_EQ(sectional_curvature(g, a, b), q(0));
}

TEST(Geometry, Su2SectionalCurvatureMatchesDirectEvaluation) {
  const auto g = construct_base_algebra(BaseAlgebraSpec::su2());
  const auto x = basis_vector(g, 0), y = basis_vector(g, 1);
  // Direct path through the base algebra only: K = 1/4 <[[x,y],x],y> / (|x|^2 |y|^2 - <x,y>^2).
  const Scalar num = q(1, 4) * base_form(g, base_bracket(g, base_bracket(g, x, y), x), y);
  const Scalar den = base_form(g, x, x) * base_form(g, y, y) - base_form(g, x, y) * base_form(g, x, y);
  const Scalar direct = num / den;
  EXPECT_EQ(direct, q(1, 8));
  EXPECT_EQ(sectional_curvature(g, constant_loop(3, 0), constant_loop(3, 1)), direct);
}

TEST(Geometry, SectionalDegenerateThrows) {
  const auto g = sl2();
  const auto e = constant_loop(3, 0);
  EXPECT_THROW(sectional_curvature(g, e, e), DegenerateError);
  const auto ef = KMElement::loop_monomial(1, 0, 1, Scalar::floating(1.0));
  EXPECT_THROW(sectional_curvature(abelian(1), ef, ef), DegenerateError);
}

TEST(Geometry, SectionalScaleInvariance) {
  Sampler s(45);
  const auto g = sl2();
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const auto a = s.km_element(3, 2, X, false, false), b = s.km_element(3, 2, X, false, false);
    if (wedge_norm_squared(g, a, b).is_zero()) continue;
    Scalar l = s.exact_scalar().real_part(), m = s.exact_scalar().real_part();
    if (l.is_zero() || m.is_zero()) continue;
    EXPECT_EQ(sectional_curvature(g, a * l, b * m), sectional_curvature(g, a, b));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Geometry, NegativeWedgeNormIsAllowed) {
  // c + d and c - d span a Lorentzian plane: <g,g> = -2, <h,h> = 2, <g,h> = 0.
  const auto g = abelian(1);
  const auto c = KMElement::central(1, X), d = KMElement::derivation(1, X);
  EXPECT_EQ(wedge_norm_squared(g, c + d, c - d), q(-4));
  EXPECT_NO_THROW(sectional_curvature(g, c + d, c - d));
}

TEST(MetricIndex, CentralPlaneIsHyperbolic) {
  const auto idx = metric_index(abelian(1), {1, true}, {});
  EXPECT_EQ(idx.neg, 1);
  EXPECT_EQ(idx.zero, 0);
  EXPECT_EQ(idx.pos, 1);
  ASSERT_EQ(idx.eigenvalues.size(), 2u);
  EXPECT_EQ(idx.eigenvalues[0], -1.0);
  EXPECT_EQ(idx.eigenvalues[1], 1.0);
}

TEST(MetricIndex, CompactFormIsLorentzian) {
  const auto g = abelian(1);
  const auto basis = heisenberg_real_form(g, Epsilon::i, 5, X, false);
  const auto idx = metric_index(g, {5, true}, basis);
  const auto oracle = oracle_spectrum(g, basis, true);
  ASSERT_EQ(idx.eigenvalues.size(), oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i) EXPECT_NEAR(idx.eigenvalues[i], oracle[i], 1e-9);
  const auto neg = std::count_if(oracle.begin(), oracle.end(), [](double v) { return v < -1e-9; });
  EXPECT_EQ(neg, 1);
  EXPECT_EQ(idx.neg, 1);
  EXPECT_EQ(idx.zero, 0);
  EXPECT_EQ(idx.pos, static_cast<int>(oracle.size()) - 1);
}

TEST(MetricIndex, CompactLoopBlockIsPositiveDefinite) {
  const auto g = abelian(2);
  const auto basis = heisenberg_real_form(g, Epsilon::i, 4, X, false);
  const auto idx = metric_index(g, {4, false}, basis);
  EXPECT_EQ(idx.neg, 0);
  EXPECT_EQ(idx.zero, 0);
  EXPECT_EQ(idx.pos, static_cast<int>(basis.size()));
  for (double v : oracle_spectrum(g, basis, false)) EXPECT_GT(v, 1e-9);
}

TEST(MetricIndex, DependentBasisThrows) {
  const auto g = abelian(1);
  const auto v = KMElement::loop_monomial(1, 0, 1, q(1)) + KMElement::loop_monomial(1, 0, -1, q(1));
  EXPECT_THROW(metric_index(g, {2, false}, {v, v * q(2)}), PreconditionError);
}

TEST(MetricIndex, WindowOverflowThrows) {
  const auto g = abelian(1);
  EXPECT_THROW(metric_index(g, {1, false}, {KMElement::loop_monomial(1, 0, 3, q(1))}), DimensionMismatch);
}
