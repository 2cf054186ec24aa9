#pragma once

#include <complex>
#include <map>
#include <optional>
#include <utility>

#include "km/scalar.hpp"

namespace km {

/// base^exponent for any integer exponent (base must be nonzero if exponent < 0).
Scalar scalar_pow(const Scalar& base, int exponent);

/// Finite Laurent polynomial sum_k a_k z^k with complex coefficients.
///
/// Canonical form: no zero coefficient is stored, so the zero polynomial is the
/// empty map. On the floating backend coefficients with modulus below 1e-300
/// are flushed to zero. All coefficients share the polynomial's backend.
class LaurentPoly {
 public:
  explicit LaurentPoly(Backend b = Backend::exact) : backend_(b) {}
  LaurentPoly(Backend b, std::map<int, Scalar> coeffs);

  static LaurentPoly monomial(int degree, Scalar coeff);
  static LaurentPoly constant(Scalar c) { return monomial(0, std::move(c)); }

  Backend backend() const noexcept { return backend_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::map<int, Scalar>& coeffs() const noexcept { return coeffs_; }
  /// Lowest and highest stored degree; nullopt for the zero polynomial.
  std::optional<std::pair<int, int>> degree_bounds() const;
  /// max |k| over stored degrees, 0 for the zero polynomial.
  int max_abs_degree() const;

  Scalar coeff(int k) const;
  void set_coeff(int k, Scalar c);
  void add_to_coeff(int k, const Scalar& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Scalar& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Scalar& s) { return a *= s; }
  friend LaurentPoly operator*(const Scalar& s, LaurentPoly a) { return a *= s; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  /// Value at z, evaluated in binary64 on either backend.
  std::complex<double> evaluate(std::complex<double> z) const;

  /// (z^k -> conj(a_{-k})): the polynomial conj(f(1/conj z)), i.e. the
  /// reflection of f across the unit circle.
  LaurentPoly circle_reflection() const;
  /// (q |> f)(z) = f(q z): coefficient a_k becomes a_k q^k.
  LaurentPoly rescale_argument(const Scalar& q) const;
  /// Drop every coefficient with |k| > window.
  LaurentPoly truncate(int window) const;
  LaurentPoly convert(Backend b) const;

 private:
  void canonicalize();

  Backend backend_;
  std::map<int, Scalar> coeffs_;
};

/// Cauchy product. Throws BackendMismatch across backends.
LaurentPoly lp_multiply(const LaurentPoly& a, const LaurentPoly& b);

/// f'(z).
LaurentPoly lp_derivative(const LaurentPoly& f);

/// z f'(z): multiplies the coefficient of degree k by k.
LaurentPoly lp_euler(const LaurentPoly& f);

/// Coefficient of z^{-1}.
Scalar lp_residue(const LaurentPoly& f);

/// Residue of f*g without forming the product: sum_k f_k g_{-1-k}.
Scalar lp_residue_of_product(const LaurentPoly& f, const LaurentPoly& g);

/// sum_k f_k g_{-k}: the circle average of f*g.
Scalar lp_circle_pairing(const LaurentPoly& f, const LaurentPoly& g);

struct AnnulusNorm {
  double estimate;         ///< max |f| sampled on both boundary circles
  double certified_upper;  ///< max over r = e^{+-n} of sum_k |a_k| r^k (<= sum_k |a_k| e^{n|k|})
};

/// Sup-norm of f over the annulus e^{-n} <= |z| <= e^{n}.
AnnulusNorm lp_annulus_norm(const LaurentPoly& f, int n, int samples = 1024);

/// sum_k |a_k| e^{n|k|} (the coefficient bound used by the tame estimates).
double lp_coefficient_norm(const LaurentPoly& f, double n);

}  // namespace km
