#pragma once

#include <vector>

#include "km/affine.hpp"

namespace km {

/// Element of the Euclidean Kac-Moody group: a C* factor q (the d-direction),
/// the logarithm lam of the loop factor, and a central coordinate.
///
///   (q, l, a)(p, m, b) = (qp, l + q|>m, a + b + 1/2 omega(l, q|>m)),
///   (q |> m)(z) = m(qz).
struct GroupElement {
  Scalar q;
  Loop lam;
  Scalar central;

  Backend backend() const noexcept { return central.backend(); }
  int dim() const noexcept { return static_cast<int>(lam.size()); }
  static GroupElement identity(int dim, Backend b);
  friend bool operator==(const GroupElement& a, const GroupElement& b);
  GroupElement convert(Backend b) const;
};

/// (q |> lam)(z) = lam(qz) componentwise.
Loop act(const Scalar& q, const Loop& lam);

/// Group law above. Requires a Euclidean (abelian) base algebra.
GroupElement group_multiply(const BaseAlgebra& alg, const GroupElement& a, const GroupElement& b);

/// (q^-1, -q^-1 |> lam, -central).
GroupElement group_inverse(const BaseAlgebra& alg, const GroupElement& g);

/// Time-one point of the one-parameter subgroup generated by X = lam + a c + b d:
///   q = e^b,  m_k = lam_k (e^{bk} - 1)/(bk),
///   central = a + sum_{k>0} <lam_k, lam_{-k}> k^2 b S(bk),  S(x) = (sinh x - x)/x^3.
/// The exact backend supports b = 0 only (e^b is irrational otherwise).
GroupElement group_exp(const BaseAlgebra& alg, const KMElement& x);

/// Inverse of group_exp on the principal domain: q off the closed negative real
/// axis (principal Log, |Im Log q| < pi) and e^{k Log q} != 1 for every
/// nonzero degree k present in lam. Throws DomainError outside it.
KMElement group_log(const BaseAlgebra& alg, const GroupElement& g);

/// group_exp(t X); t must be real.
GroupElement geodesic(const BaseAlgebra& alg, const KMElement& x, const Scalar& t);

/// rho_p(g) = p g^-1 p.
GroupElement geodesic_symmetry(const BaseAlgebra& alg, const GroupElement& p,
                               const GroupElement& g);

/// The two real forms of the abelian loop algebra on the unit circle:
/// loops with real values (lam_{-k} = conj lam_k) and loops with imaginary
/// values (lam_{-k} = -conj lam_k).
enum class RealFormKind { real_valued, imaginary_valued };

const char* to_string(RealFormKind k);

/// Representative of the coset g H, where H is the real subgroup with q on the
/// unit circle, lam in the chosen real form and central in iR. The
/// representative has q > 0, lam in q|>(complementary form) and a real
/// central coordinate; canonicalization is idempotent.
struct CosetRep {
  GroupElement rep;
  RealFormKind kind;
  /// The stabilizer element h with g h = rep.
  GroupElement stabilizer_part;
};

/// Throws DimensionMismatch if lam has degrees outside the window. On the exact
/// backend q must be real (|q| would be irrational otherwise).
CosetRep coset_canonicalize(const BaseAlgebra& alg, const GroupElement& g, RealFormKind kind,
                            int window);

/// True iff lam lies in the real form `kind`.
bool in_real_form(const Loop& lam, RealFormKind kind);

/// Real basis of the stabilizer's loop directions within the window.
std::vector<KMElement> stabilizer_loop_basis(const BaseAlgebra& alg, RealFormKind kind, int window,
                                             Backend b = Backend::exact);

}  // namespace km
