#pragma once

#include <string>
#include <vector>

#include "km/base_algebra.hpp"
#include "km/laurent.hpp"

namespace km {

/// Loop part of an element: component i is the coefficient function of e_i.
using Loop = std::vector<LaurentPoly>;

/// Element f + c_coef * c + d_coef * d of the affine algebra L(g) + Cc + Cd.
struct KMElement {
  Loop loop;
  Scalar c;
  Scalar d;

  Backend backend() const noexcept { return c.backend(); }
  int dim() const noexcept { return static_cast<int>(loop.size()); }

  static KMElement zero(int dim, Backend b);
  static KMElement central(int dim, Backend b);
  static KMElement derivation(int dim, Backend b);
  /// coeff * z^degree * e_component.
  static KMElement loop_monomial(int dim, int component, int degree, const Scalar& coeff);
  static KMElement from_loop(Loop loop);

  bool is_zero() const;
  /// Throws unless every component shares the backend of c and d.
  void check_backend() const;

  KMElement operator-() const;
  KMElement& operator+=(const KMElement& o);
  KMElement& operator-=(const KMElement& o);
  KMElement& operator*=(const Scalar& s);
  friend KMElement operator+(KMElement a, const KMElement& b) { return a += b; }
  friend KMElement operator-(KMElement a, const KMElement& b) { return a -= b; }
  friend KMElement operator*(KMElement a, const Scalar& s) { return a *= s; }
  friend KMElement operator*(const Scalar& s, KMElement a) { return a *= s; }
  friend bool operator==(const KMElement& a, const KMElement& b);

  KMElement convert(Backend b) const;
  /// Largest |k| appearing in any loop component.
  int max_abs_degree() const;
};

/// Pointwise bracket [f(z), g(z)]_0 of two loops.
Loop loop_bracket(const BaseAlgebra& alg, const Loop& f, const Loop& g);

/// omega(f, g) = Res <f, g'>.
Scalar cocycle(const BaseAlgebra& alg, const Loop& f, const Loop& g);

/// Bracket of the affine algebra:
///   [f, g] = [f(z), g(z)]_0 + omega(f, g) c,   [d, f] = z f'(z),   c central.
/// The derivation acts as the Euler operator z d/dz. The result is never
/// truncated, so degrees may grow to the sum of the operands' degrees.
KMElement km_bracket(const BaseAlgebra& alg, const KMElement& x, const KMElement& y);

/// Invariant form: circle average sum_k <u_k, v_{-k}> of the loops, with
/// <c, d> = -1 and every other pairing involving c or d zero.
Scalar km_metric(const BaseAlgebra& alg, const KMElement& x, const KMElement& y);

enum class KMTypeLabel { euclidean, semisimple, mixed };

struct KMType {
  KMTypeLabel label;
  /// Per-block labels (euclidean or semisimple), in block order.
  std::vector<KMTypeLabel> factors;
};

const char* to_string(KMTypeLabel t);

KMType classify_km_type(const BaseAlgebra& alg);

/// Coordinates of x in the truncated basis {z^k e_i : |k| <= window} + {c, d}.
/// Layout: component-major, degree -window..window, then c, then d.
/// Throws DimensionMismatch if x has a degree outside the window.
std::vector<Scalar> km_coordinates(const KMElement& x, int window, bool include_cd = true);

/// Inverse of km_coordinates.
KMElement km_from_coordinates(const std::vector<Scalar>& coords, int dim, int window,
                              bool include_cd = true);

/// The truncated basis used by km_coordinates (same order).
std::vector<KMElement> km_truncated_basis(int dim, int window, Backend b, bool include_cd = true);

std::string describe(const KMElement& x);

}  // namespace km
