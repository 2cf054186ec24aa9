#include "km/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "km/errors.hpp"
#include "km/linalg.hpp"

namespace km {

KMElement connection(const BaseAlgebra& alg, const KMElement& x, const KMElement& y) {
  return km_bracket(alg, x, y) * Scalar::rational(1, 2, x.backend());
}

KMElement curvature(const BaseAlgebra& alg, const KMElement& g, const KMElement& h,
                    const KMElement& k) {
  return km_bracket(alg, km_bracket(alg, g, h), k) * Scalar::rational(1, 4, g.backend());
}

Scalar wedge_norm_squared(const BaseAlgebra& alg, const KMElement& g, const KMElement& h) {
  const Scalar gh = km_metric(alg, g, h);
  return km_metric(alg, g, g) * km_metric(alg, h, h) - gh * gh;
}

Scalar sectional_curvature(const BaseAlgebra& alg, const KMElement& g, const KMElement& h) {
  const Scalar gg = km_metric(alg, g, g);
  const Scalar hh = km_metric(alg, h, h);
  const Scalar gh = km_metric(alg, g, h);
  const Scalar den = gg * hh - gh * gh;
  const bool degenerate = g.backend() == Backend::exact
                              ? den.is_zero()
                              : den.abs() <= 1e-12 * std::max((gg * hh).abs(), (gh * gh).abs());
  if (degenerate)
    throw DegenerateError("degenerate plane: |g^h|^2 = " + den.to_string());
  return km_metric(alg, curvature(alg, g, h, g), h) / den;
}

namespace {

struct Inertia {
  int neg = 0, zero = 0, pos = 0;
};

// Sylvester inertia of a rational symmetric matrix by congruence elimination.
Inertia exact_inertia(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n && p == n; ++i)
      if (!done[i] && a[i][i] != 0) p = i;
    if (p == n) {
      // Zero diagonal: a_ij != 0 makes (e_i + e_j) anisotropic.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (std::size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (std::size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      p = pi;
    }
    done[p] = true;
    const Rational pivot = a[p][p];
    if (pivot > 0) {
      ++out.pos;
    } else {
      ++out.neg;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][p] == 0) continue;
      const Rational f = a[i][p] / pivot;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[p][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][p];
    }
  }
  out.zero = static_cast<int>(n) - out.neg - out.pos;
  return out;
}

}  // namespace

MetricIndex metric_index(const BaseAlgebra& alg, const TruncationWindow& window,
                         const std::vector<KMElement>& basis) {
  if (window.N < 1) throw DomainError("truncation window must be at least 1");
  std::vector<KMElement> full = basis;
  if (window.include_cd) {
    const Backend b = basis.empty() ? Backend::exact : basis.front().backend();
    full.push_back(KMElement::central(alg.dim(), b));
    full.push_back(KMElement::derivation(alg.dim(), b));
  }
  const auto n = full.size();
  MetricIndex out;
  if (n == 0) return out;

  ScalarMatrix coords;
  for (const auto& x : full) coords.push_back(realify(km_coordinates(x, window.N)));
  const auto rank = span_rank(coords);
  if (rank < n)
    throw PreconditionError("basis is real-linearly dependent: rank " + std::to_string(rank) +
                            " < " + std::to_string(n) + " elements");

  const bool exact = full.front().backend() == Backend::exact;
  std::vector<std::vector<Rational>> exact_gram(exact ? n : 0, std::vector<Rational>(exact ? n : 0));
  Eigen::MatrixXd gram(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Scalar v = km_metric(alg, full[i], full[j]);
      const auto z = v.to_complex();
      const bool real = v.is_exact() ? v.is_real() : std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z));
      if (!real)
        throw DomainError("Gram entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") = " + v.to_string() + " is not real");
      if (exact) exact_gram[i][j] = exact_gram[j][i] = v.exact_value().re;
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z.real();
      gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = z.real();
    }
  Eigen::VectorXd eig;
  if (n == 2) {
    // Closed form; exact for the isotropic {c, d} plane.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> direct;
    direct.computeDirect(Eigen::Matrix2d(gram), Eigen::EigenvaluesOnly);
    eig = direct.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("eigensolver did not converge");
    eig = solver.eigenvalues();
  }
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    const double lambda = eig(i);
    out.eigenvalues.push_back(lambda);
    if (lambda < -1e-9) {
      ++out.neg;
    } else if (lambda > 1e-9) {
      ++out.pos;
    } else {
      ++out.zero;
    }
  }
  if (exact) {
    const Inertia in = exact_inertia(std::move(exact_gram));
    if (in.neg != out.neg || in.zero != out.zero || in.pos != out.pos)
      throw DomainError("eigenvalue sign counts disagree with the exact inertia (" +
                        std::to_string(in.neg) + "," + std::to_string(in.zero) + "," +
                        std::to_string(in.pos) + "); the Gram matrix is too ill-conditioned");
  }
  return out;
}

}  // namespace km
