#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>
#include <variant>

namespace km {

enum class Backend { exact, floating };

const char* to_string(Backend b);

using Rational = mpq_class;

/// Complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re;
  Rational im;
};

/// A complex scalar on one of two backends.
///
/// The exact backend stores Gaussian rationals and never rounds. The floating
/// backend stores a binary64 complex and refuses to produce NaN or Inf: any
/// operation whose result would be non-finite throws DomainError. Mixing
/// backends in one operation throws BackendMismatch.
class Scalar {
 public:
  /// Exact zero.
  Scalar() : value_(GaussianRational{}) {}

  static Scalar exact(Rational re, Rational im = 0);
  static Scalar floating(std::complex<double> z);
  static Scalar floating(double re, double im = 0.0) { return floating({re, im}); }
  static Scalar integer(long n, Backend b);
  static Scalar rational(long num, long den, Backend b);
  static Scalar imaginary_unit(Backend b);
  static Scalar zero(Backend b) { return integer(0, b); }
  static Scalar one(Backend b) { return integer(1, b); }

  Backend backend() const noexcept {
    return std::holds_alternative<GaussianRational>(value_) ? Backend::exact : Backend::floating;
  }
  bool is_exact() const noexcept { return backend() == Backend::exact; }

  const GaussianRational& exact_value() const;
  std::complex<double> float_value() const;
  /// Value as a binary64 complex on either backend.
  std::complex<double> to_complex() const;
  /// Same value moved to backend `b`. Exact -> floating rounds; floating -> exact
  /// converts each binary64 exactly.
  Scalar convert(Backend b) const;

  bool is_zero() const;
  /// Imaginary part is zero.
  bool is_real() const;
  /// Real part is zero.
  bool is_imaginary() const;

  Scalar real_part() const;
  Scalar imag_part() const;
  Scalar conj() const;
  double abs() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Bitwise equality on the floating backend, value equality on the exact one.
  /// Comparing across backends is a mismatch and throws.
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;
  void check_finite() const;

  std::variant<GaussianRational, std::complex<double>> value_;
};

/// a*b + c without the temporary juggling at call sites.
inline void fma_into(Scalar& acc, const Scalar& a, const Scalar& b) { acc += a * b; }

}  // namespace km
