#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "km/affine.hpp"
#include "km/errors.hpp"
#include "km/linalg.hpp"

namespace km {

// ---------------------------------------------------------------------------
// Heisenberg algebras H_{k,eps}
// ---------------------------------------------------------------------------

enum class Epsilon { one, i };

const char* to_string(Epsilon e);
Scalar epsilon_value(Epsilon e, Backend b);

/// r_c c + sum r_{n,i} a_{n,i} in H_{k,eps}, finitely many nonzero modes.
/// Mode keys are (n, i) with n != 0 and 0 <= i < k.
struct HeisenbergElement {
  int k = 1;
  Epsilon eps = Epsilon::one;
  std::map<std::pair<int, int>, Scalar> modes;
  Scalar central;

  static HeisenbergElement zero(int k, Epsilon eps, Backend b);
  static HeisenbergElement generator(int k, Epsilon eps, int n, int i, Backend b);
  static HeisenbergElement central_element(int k, Epsilon eps, Backend b);

  Backend backend() const noexcept { return central.backend(); }
  bool is_zero() const;
  void add_mode(int n, int i, const Scalar& s);

  HeisenbergElement& operator+=(const HeisenbergElement& o);
  HeisenbergElement& operator*=(const Scalar& s);
  friend HeisenbergElement operator+(HeisenbergElement a, const HeisenbergElement& b) {
    return a += b;
  }
  friend HeisenbergElement operator*(HeisenbergElement a, const Scalar& s) { return a *= s; }
  friend bool operator==(const HeisenbergElement& a, const HeisenbergElement& b);
};

/// [a_{m,i}, a_{n,j}] = sign(m) delta_ij delta_{m,-n} eps c, c central.
/// For m > 0 this is the defining relation; m < 0 follows from antisymmetry.
HeisenbergElement heisenberg_bracket(const HeisenbergElement& x, const HeisenbergElement& y);

/// Linear identification of the derived algebra of the Euclidean affine
/// algebra over C^k with H_{k,eps} on the window 0 < |n| <= window:
///   a_{n,i} <-> z^n e_i / s_{n,i},  c <-> c.
/// s_{n,i} = 1 for n > 0 and s_{-n,i} = omega(z^n e_i, z^{-n} e_i) / eps, so the
/// measured cocycle is normalized to the relation [a_n, a_{-n}] = eps c.
class HeisenbergIso {
 public:
  HeisenbergIso(int k, int window, Epsilon eps, std::map<std::pair<int, int>, Scalar> scale);

  int k() const noexcept { return k_; }
  int window() const noexcept { return window_; }
  Epsilon eps() const noexcept { return eps_; }
  const Scalar& scale(int n, int i) const;

  /// phi: requires zero d-part and zero constant mode.
  HeisenbergElement to_heisenberg(const KMElement& x) const;
  /// phi^{-1}.
  KMElement to_affine(const HeisenbergElement& h) const;

 private:
  int k_;
  int window_;
  Epsilon eps_;
  std::map<std::pair<int, int>, Scalar> scale_;
};

struct IsoCertificate {
  std::size_t pairs_checked = 0;
  bool relation_holds = true;      ///< [psi a, psi b] = psi [a, b] on all Heisenberg basis pairs
  bool homomorphism = true;        ///< phi[X, Y] = [phi X, phi Y] on all affine basis pairs
  bool derived_excludes_d = true;  ///< no bracket output has a d-part
  bool derived_excludes_zero_mode = true;
  std::size_t derived_rank = 0;
  std::size_t expected_rank = 0;  ///< k * 2 * window + 1
  std::vector<std::string> failures;
  bool ok() const {
    return relation_holds && homomorphism && derived_excludes_d && derived_excludes_zero_mode &&
           derived_rank == expected_rank;
  }
};

struct DerivedAlgebraIso {
  HeisenbergIso map;
  IsoCertificate certificate;
};

/// Builds the normalization from measured brackets and certifies it
/// exhaustively on the window. Requires a Euclidean algebra whose form is
/// diagonal; throws PreconditionError otherwise.
DerivedAlgebraIso derived_algebra_iso(const BaseAlgebra& alg, int window, Epsilon eps,
                                      Backend b = Backend::exact);

// ---------------------------------------------------------------------------
// Involutions and OSAKA conditions
// ---------------------------------------------------------------------------

enum class ZAction { identity, invert_conjugate };

const char* to_string(ZAction z);

/// Linear (z_action = identity) or conjugate-linear (invert_conjugate) map
///   f(z) -> M f(z)                 resp.   f(z) -> M conj(f(1/conj z)),
///   c -> c_sign c, d -> d_sign d    (conjugated too in the antilinear case).
struct Involution {
  ScalarMatrix base_map;  ///< dim x dim, exact
  ZAction z_action = ZAction::identity;
  int c_sign = 1;
  int d_sign = 1;
  std::string label;
  bool certified_involutive = false;
  bool certified_automorphism = false;

  bool certified() const noexcept { return certified_involutive && certified_automorphism; }
  bool antilinear() const noexcept { return z_action == ZAction::invert_conjugate; }
};

/// f -> -f, c and d fixed. Non-normative preset.
Involution negation_involution(const BaseAlgebra& alg);

/// f -> base_sign * conj(f(1/conj z)), c -> -conj(c), d -> -conj(d). The signs on
/// c and d are the ones forced by the automorphism property. Non-normative preset.
Involution circle_conjugation(const BaseAlgebra& alg, int base_sign = 1);

KMElement apply_involution(const Involution& rho, const KMElement& x);

struct InvolutionCertificate {
  bool involutive = false;
  bool automorphism = false;
  int window = 0;
  std::optional<std::string> witness;  ///< first violated basis element or pair
  Involution certified;                ///< copy of the input with flags set
  bool ok() const { return involutive && automorphism; }
};

/// Checks rho^2 = id and rho[X, Y] = [rho X, rho Y] exactly on the truncated
/// basis {z^k e_i : |k| <= window} + {c, d}.
InvolutionCertificate check_involution(const Involution& rho, const BaseAlgebra& alg,
                                       int window);

/// Real basis of the fixed set of rho restricted to the subspace spanned by
/// `support` (real-linear span of the given complex elements and their
/// i-multiples). Kernel of (rho - id), computed on realified coordinates.
std::vector<KMElement> fixed_real_span(const Involution& rho, const BaseAlgebra& alg,
                                       const std::vector<KMElement>& support, int window);

struct FactorFixedDim {
  std::string label;
  bool abelian = false;
  std::size_t real_dim = 0;  ///< real dimension of Fix(rho) intersected with L(factor)
};

struct OsakaReport {
  bool condition1 = false;  ///< the base algebra is a valid reductive Lie algebra with invariant form
  bool condition2 = false;  ///< rho is a certified involutive automorphism
  bool condition3 = false;  ///< Fix(rho) intersected with L(g_a) is zero
  bool irreducible = false;
  int window = 0;
  std::vector<FactorFixedDim> factors;
  std::vector<std::string> witnesses;
};

/// Throws PreconditionError if rho is not certified.
OsakaReport osaka_validate(const BaseAlgebra& alg, const Involution& rho, int window);

// ---------------------------------------------------------------------------
// Real forms
// ---------------------------------------------------------------------------

enum class RealFormType { compact, noncompact };

const char* to_string(RealFormType t);

/// A real form contains both real and imaginary central coefficients.
class MixedTypeError : public Error {
 public:
  using Error::Error;
};

/// Classifies the real span of `basis` by the central coefficients its
/// brackets produce: all imaginary -> compact, all real -> noncompact.
/// Throws PreconditionError if the span is not closed under the bracket or
/// no bracket has a central part, and MixedTypeError if both kinds occur.
RealFormType classify_real_form(const BaseAlgebra& alg, const std::vector<KMElement>& basis);

/// Real bases of the two Heisenberg real forms over an abelian algebra:
///  - eps = 1: {z^n e_i : 0 < |n| <= window} + {c, d}     (H_{k,1} (x) Rd)
///  - eps = i: {(z^n + z^-n) e_i, i(z^n - z^-n) e_i : 1 <= n <= window} + {ic, id}
///             (loops real on the unit circle, H_{k,i} (x) iRd)
/// With include_cd = false only the loop part is returned.
std::vector<KMElement> heisenberg_real_form(const BaseAlgebra& alg, Epsilon eps, int window,
                                            Backend b = Backend::exact, bool include_cd = true);

}  // namespace km
